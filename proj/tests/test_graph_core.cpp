#include <catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "udg/canonical.hpp"
#include "udg/connectivity.hpp"
#include "udg/enumerate.hpp"
#include "udg/small_graph.hpp"
#include "udg/subgraph.hpp"

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

SmallGraph random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return SmallGraph::from_edges(n, edges);
}

std::vector<int> random_perm(std::mt19937_64& rng, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Lexicographically smallest graph6 over all relabelings.
std::string brute_canonical(const SmallGraph& g) {
  std::vector<int> p(g.order());
  std::iota(p.begin(), p.end(), 0);
  std::string best;
  do {
    std::string s = to_graph6(g.relabeled(p));
    if (best.empty() || s < best) best = s;
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

bool naive_contains(const SmallGraph& host, const SmallGraph& pattern) {
  if (pattern.order() > host.order()) return false;
  std::vector<int> hosts(host.order());
  std::iota(hosts.begin(), hosts.end(), 0);
  const auto pe = pattern.edges();
  do {
    bool ok = true;
    for (const auto& [u, v] : pe) {
      if (!host.has_edge(hosts[u], hosts[v])) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(hosts.begin(), hosts.end()));
  return false;
}

bool oracle_biconnected(const SmallGraph& g) {
  if (g.order() < 2 || !is_connected(g)) return false;
  if (g.order() == 2) return true;
  for (int v = 0; v < g.order(); ++v)
    if (!is_connected(g.without_vertex(v))) return false;
  return true;
}

SmallGraph moser_spindle() {
  return SmallGraph::from_edges(
      7, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {0, 5}, {4, 5}, {4, 6}, {5, 6}, {3, 6}});
}

}  // namespace

TEST_CASE("graph6 decodes the documented examples") {
  CHECK(parse_graph6("C~") == SmallGraph::complete(4));
  CHECK(parse_graph6("D]o") == SmallGraph::complete_bipartite(2, 3));
  const SmallGraph one = parse_graph6("@");
  CHECK(one.order() == 1);
  CHECK(one.size() == 0);
  CHECK(parse_graph6(">>graph6<<C~\n") == SmallGraph::complete(4));
}

TEST_CASE("graph6 encodes the documented examples") {
  CHECK(to_graph6(SmallGraph::complete(4)) == "C~");
  CHECK(to_graph6(SmallGraph(1)) == "@");
  CHECK(to_graph6(SmallGraph(5)) == "D??");
  CHECK(to_graph6(SmallGraph::complete_bipartite(2, 3)) == "D]o");
}

TEST_CASE("graph6 rejects malformed input with a byte offset") {
  auto offset_of = [](std::string_view s) -> std::size_t {
    try {
      parse_graph6(s);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return static_cast<std::size_t>(-1);
  };
  CHECK(offset_of("") == 0);
  CHECK(offset_of("C~~") == 2);
  CHECK(offset_of("C") == 1);
  CHECK(offset_of("C\x01") == 1);
  CHECK(offset_of("Q") == 0);   // n = 18
  CHECK(offset_of("~") == 0);   // long form
  CHECK(offset_of("BA") == 1);  // padding bit set
  CHECK(offset_of(">>graph6<<C ") == 11);
  CHECK_THROWS_WITH(parse_graph6("C!"), Catch::Matchers::ContainsSubstring("at byte 1"));
}

TEST_CASE("graph6 round-trips every labeled graph on up to 6 vertices") {
  for (int n = 1; n <= 6; ++n) {
    const std::uint32_t total = 1U << (n * (n - 1) / 2);
    for (std::uint32_t b = 0; b < total; ++b) {
      const SmallGraph g = labeled_graph(n, b);
      REQUIRE(parse_graph6(to_graph6(g)) == g);
    }
  }
}

TEST_CASE("graph6 round-trips random graphs up to the vertex cap") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 2000; ++t) {
    const int n = 1 + static_cast<int>(rng() % kMaxVertices);
    const SmallGraph g = random_graph(rng, n, 0.4);
    REQUIRE(parse_graph6(to_graph6(g)) == g);
  }
}

TEST_CASE("SmallGraph keeps rows symmetric and loop-free") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + static_cast<int>(rng() % kMaxVertices);
    const SmallGraph g = random_graph(rng, n, 0.5);
    for (int u = 0; u < kMaxVertices; ++u) {
      if (u >= n) {
        REQUIRE(g.neighbors(u) == 0);
        continue;
      }
      REQUIRE_FALSE(g.has_edge(u, u));
      for (int v = 0; v < n; ++v) REQUIRE(g.has_edge(u, v) == g.has_edge(v, u));
    }
  }
  CHECK_THROWS_AS(SmallGraph(17), std::invalid_argument);
  CHECK_THROWS_AS(SmallGraph::from_edges(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(SmallGraph::from_edges(3, {{0, 3}}), std::invalid_argument);
}

TEST_CASE("canonical form separates the 11 graphs on 4 vertices") {
  std::set<std::string> forms, brute;
  for (std::uint32_t b = 0; b < 64; ++b) {
    const SmallGraph g = labeled_graph(4, b);
    forms.insert(canonical_form(g).bytes);
    brute.insert(brute_canonical(g));
  }
  CHECK(forms.size() == 11);
  CHECK(brute.size() == 11);
}

TEST_CASE("canonical form agrees with the brute-force oracle on 5 vertices") {
  // Same partition of labeled graphs into classes.
  std::map<std::string, std::string> fast_to_brute;
  for (std::uint32_t b = 0; b < 1024; ++b) {
    const SmallGraph g = labeled_graph(5, b);
    const auto fast = canonical_form(g).bytes;
    const auto slow = brute_canonical(g);
    auto [it, inserted] = fast_to_brute.emplace(fast, slow);
    REQUIRE(it->second == slow);
  }
  CHECK(fast_to_brute.size() == 34);
  std::set<std::string> distinct;
  for (const auto& [f, s] : fast_to_brute) distinct.insert(s);
  CHECK(distinct.size() == 34);
}

TEST_CASE("canonical form examples") {
  std::mt19937_64 rng(3);
  const SmallGraph k4 = SmallGraph::complete(4);
  for (int t = 0; t < 10; ++t) CHECK(canonical_form(k4.relabeled(random_perm(rng, 4))) == canonical_form(k4));
  CHECK_FALSE(canonical_form(SmallGraph::path(3)) == canonical_form(SmallGraph::complete(3)));
}

TEST_CASE("canonical form is invariant under random relabeling") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const SmallGraph g = random_graph(rng, n, 0.1 + 0.8 * (t % 10) / 10.0);
    const auto perm = random_perm(rng, n);
    const CanonicalForm a = canonical_form(g);
    const CanonicalForm b = canonical_form(g.relabeled(perm));
    REQUIRE(a.bytes == b.bytes);
    REQUIRE(g.relabeled(a.perm) == parse_graph6(a.bytes));
  }
}

TEST_CASE("canonical form handles highly symmetric graphs") {
  const std::vector<SmallGraph> graphs = {SmallGraph(16), SmallGraph::complete(16), SmallGraph::cycle(16),
                                          SmallGraph::complete_bipartite(8, 8),
                                          SmallGraph::complete_bipartite(3, 13)};
  std::mt19937_64 rng(5);
  for (const auto& g : graphs) {
    const auto perm = random_perm(rng, g.order());
    CHECK(canonical_form(g) == canonical_form(g.relabeled(perm)));
  }
  // Two 8-cycles vs one 16-cycle: same degree sequence, not isomorphic.
  std::vector<Edge> two;
  for (int v = 0; v < 8; ++v) {
    two.emplace_back(v, (v + 1) % 8);
    two.emplace_back(8 + v, 8 + (v + 1) % 8);
  }
  CHECK_FALSE(isomorphic(SmallGraph::from_edges(16, two), SmallGraph::cycle(16)));
}

TEST_CASE("automorphism orbits match the brute-force group") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const SmallGraph g = random_graph(rng, n, 0.5);
    const Labeling lab = canonical_labeling(g);
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<int> orbit(n);
    std::iota(orbit.begin(), orbit.end(), 0);
    do {
      if (g.relabeled(p) != g) continue;
      for (int v = 0; v < n; ++v) orbit[v] = std::min(orbit[v], p[v]);
    } while (std::next_permutation(p.begin(), p.end()));
    for (int v = 0; v < n; ++v) REQUIRE(lab.orbit[v] == lab.orbit[orbit[v]]);
    for (const auto& gamma : lab.generators) {
      std::vector<int> q(gamma.begin(), gamma.begin() + n);
      REQUIRE(g.relabeled(q) == g);
    }
  }
}

TEST_CASE("is_biconnected examples and conventions") {
  CHECK(is_biconnected(SmallGraph::complete(4)));
  CHECK_FALSE(is_biconnected(SmallGraph::path(3)));
  CHECK(is_biconnected(SmallGraph::complete(2)));
  CHECK_FALSE(is_biconnected(SmallGraph(1)));
  CHECK_FALSE(is_biconnected(SmallGraph(2)));
  CHECK(is_biconnected(SmallGraph::cycle(9)));
}

TEST_CASE("is_biconnected agrees with the vertex-deletion oracle for n <= 6") {
  for (int n = 1; n <= 6; ++n) {
    const std::uint32_t total = 1U << (n * (n - 1) / 2);
    for (std::uint32_t b = 0; b < total; ++b) {
      const SmallGraph g = labeled_graph(n, b);
      REQUIRE(is_biconnected(g) == oracle_biconnected(g));
    }
  }
}

TEST_CASE("biconnected_components examples") {
  const SmallGraph bowtie = SmallGraph::from_edges(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
  const auto b1 = biconnected_components(bowtie);
  REQUIRE(b1.size() == 2);
  for (const auto& b : b1) CHECK(isomorphic(b.graph, SmallGraph::complete(3)));

  const auto b2 = biconnected_components(SmallGraph::complete(4));
  REQUIRE(b2.size() == 1);
  CHECK(b2[0].graph == SmallGraph::complete(4));

  const auto b3 = biconnected_components(SmallGraph::path(4));
  REQUIRE(b3.size() == 3);
  for (const auto& b : b3) CHECK(b.graph == SmallGraph::complete(2));
}

TEST_CASE("block edge sets partition the edge set") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 2000; ++t) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const SmallGraph g = random_graph(rng, n, 0.25);
    std::multiset<Edge> seen;
    Row covered = 0;
    for (const auto& b : biconnected_components(g)) {
      REQUIRE((b.graph.order() == 1 || is_biconnected(b.graph)));
      for (int v : b.vertices) covered |= static_cast<Row>(1U << v);
      for (const auto& [u, v] : b.graph.edges()) {
        const int a = std::min(b.vertices[u], b.vertices[v]);
        const int c = std::max(b.vertices[u], b.vertices[v]);
        REQUIRE(g.has_edge(a, c));
        seen.emplace(a, c);
      }
    }
    const auto all = g.edges();
    REQUIRE(seen == std::multiset<Edge>(all.begin(), all.end()));
    REQUIRE(covered == g.vertex_mask());
  }
}

TEST_CASE("contains_subgraph examples") {
  const auto w = contains_subgraph(SmallGraph::complete(5), SmallGraph::complete(4));
  REQUIRE(w);
  CHECK(is_valid_witness(SmallGraph::complete(5), SmallGraph::complete(4), *w));
  CHECK_FALSE(contains_subgraph(SmallGraph::cycle(9), SmallGraph::complete(3)));
  CHECK_FALSE(contains_subgraph(moser_spindle(), SmallGraph::complete(4)));
  CHECK_FALSE(naive_contains(moser_spindle(), SmallGraph::complete(4)));
  CHECK_FALSE(contains_subgraph(SmallGraph::complete(3), SmallGraph::complete(4)));
  // Non-induced: a 4-cycle lives inside K4.
  CHECK(contains_subgraph(SmallGraph::complete(4), SmallGraph::cycle(4)));
}

TEST_CASE("contains_subgraph agrees with the all-injections oracle") {
  std::vector<SmallGraph> hosts, patterns;
  for (int n = 1; n <= 6; ++n)
    for (const auto& g : generate(n, Filter::all)) hosts.push_back(g);
  for (int n = 1; n <= 5; ++n)
    for (const auto& g : generate(n, Filter::all)) patterns.push_back(g);
  std::mt19937_64 rng(1);
  for (const auto& h0 : hosts) {
    // Scramble host labels so the matcher does not see canonical order.
    const SmallGraph h = h0.relabeled(random_perm(rng, h0.order()));
    for (const auto& p : patterns) {
      const auto w = contains_subgraph(h, p);
      REQUIRE(w.has_value() == naive_contains(h, p));
      if (w) REQUIRE(is_valid_witness(h, p, *w));
    }
  }
}

TEST_CASE("matcher honors fixed pairs and enumerates all monomorphisms") {
  const SmallHost host = SmallHost::from_small(SmallGraph::complete(4));
  const SmallGraph tri = SmallGraph::complete(3);
  int total = 0;
  SubgraphMatcher<1>(tri, host).for_each([&](std::span<const int>) {
    ++total;
    return true;
  });
  CHECK(total == 24);
  const std::vector<std::pair<int, int>> fixed{{0, 3}, {1, 2}};
  int pinned = 0;
  SubgraphMatcher<1>(tri, host).for_each(
      [&](std::span<const int> m) {
        CHECK(m[0] == 3);
        CHECK(m[1] == 2);
        ++pinned;
        return true;
      },
      fixed);
  CHECK(pinned == 2);
}
