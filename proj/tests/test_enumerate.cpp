#include <catch_amalgamated.hpp>

#include <random>
#include <set>
#include <unordered_set>

#include "udg/canonical.hpp"
#include "udg/enumerate.hpp"

using namespace udg;

namespace {

SmallGraph labeled_graph(int n, std::uint32_t bits) {
  std::vector<Edge> edges;
  int k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k)
      if ((bits >> k) & 1U) edges.emplace_back(i, j);
  return SmallGraph::from_edges(n, edges);
}

std::set<std::string> brute_classes(int n, Filter f) {
  std::set<std::string> out;
  const std::uint32_t total = 1U << (n * (n - 1) / 2);
  for (std::uint32_t b = 0; b < total; ++b) {
    const SmallGraph g = labeled_graph(n, b);
    if (satisfies(g, f)) out.insert(canonical_form(g).bytes);
  }
  return out;
}

std::set<std::string> canonical_set(const std::vector<SmallGraph>& gs) {
  std::set<std::string> out;
  for (const auto& g : gs) out.insert(canonical_form(g).bytes);
  return out;
}

}  // namespace

TEST_CASE("small counts") {
  CHECK(count(1, Filter::all) == 1);
  CHECK(count(1, Filter::connected) == 1);
  CHECK(count(1, Filter::biconnected) == 0);
  CHECK(count(2, Filter::biconnected) == 1);
  CHECK(count(4, Filter::all) == 11);
  CHECK(count(7, Filter::all) == 1044);
  CHECK(count(7, Filter::connected) == 853);
  CHECK(count(7, Filter::biconnected) == 468);
  CHECK(count(8, Filter::biconnected) == 7123);
}

TEST_CASE("generation matches brute-force canonicalization for n <= 6") {
  for (int n = 1; n <= 6; ++n) {
    for (Filter f : {Filter::all, Filter::connected, Filter::biconnected}) {
      const auto gs = generate(n, f);
      const auto got = canonical_set(gs);
      CAPTURE(n, to_string(f));
      REQUIRE(got.size() == gs.size());
      REQUIRE(got == brute_classes(n, f));
    }
  }
}

TEST_CASE("count(7, all) agrees with the brute-force oracle") {
  CHECK(brute_classes(7, Filter::all).size() == 1044);
}

TEST_CASE("no duplicates and filter soundness at n = 8") {
  for (Filter f : {Filter::all, Filter::connected, Filter::biconnected}) {
    const auto gs = generate(8, f);
    std::unordered_set<std::string> seen;
    for (const auto& g : gs) {
      REQUIRE(g.order() == 8);
      REQUIRE(satisfies(g, f));
      REQUIRE(seen.insert(canonical_form(g).bytes).second);
    }
  }
}

TEST_CASE("random labeled graphs outside the biconnected stream fail the predicate") {
  std::unordered_set<std::string> emitted;
  for (const auto& g : generate(8, Filter::biconnected)) emitted.insert(canonical_form(g).bytes);
  std::mt19937_64 rng(8);
  int rejections = 0;
  while (rejections < 1000) {
    const SmallGraph g = labeled_graph(8, static_cast<std::uint32_t>(rng() & ((1ULL << 28) - 1)));
    const bool in_stream = emitted.count(canonical_form(g).bytes) > 0;
    REQUIRE(in_stream == is_biconnected(g));
    if (!in_stream) ++rejections;
  }
}

TEST_CASE("generation is deterministic and thread-count independent") {
  auto stream = [](int threads) {
    std::string s;
    for (const auto& g : generate(8, Filter::connected, threads)) s += to_graph6(g) + '\n';
    return s;
  };
  const std::string a = stream(1);
  CHECK(a == stream(1));
  CHECK(a == stream(3));
}

TEST_CASE("filter names parse") {
  CHECK(parse_filter("biconnected") == Filter::biconnected);
  CHECK(to_string(Filter::connected) == "connected");
  CHECK_THROWS_AS(parse_filter("planar"), std::invalid_argument);
  CHECK_THROWS_AS(generate(0, Filter::all), std::invalid_argument);
}
