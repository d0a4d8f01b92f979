#include <catch_amalgamated.hpp>

#include <fstream>

#include "udg/catalog.hpp"
#include "udg/embed.hpp"
#include "udg/enumerate.hpp"

using namespace udg;

namespace {

const Catalog& catalog() {
  static const Catalog cat = load_catalog();
  return cat;
}

nlohmann::json raw_catalog() {
  std::ifstream in(default_data_dir() / "catalog.json");
  return nlohmann::json::parse(in);
}

Embedder numeric_embedder() {
  return [](const SmallGraph& g) {
    const SolveReport r = solve_numeric_report(g);
    return std::pair{r.embedding.has_value(), r.embedding ? r.embedding->residual : r.best_residual};
  };
}

}  // namespace

TEST_CASE("catalog loads with the expected cardinalities") {
  const Catalog& cat = catalog();
  CHECK(cat.size() == 74);
  CHECK(cat.count_upto(7) == 6);
  CHECK(cat.count_upto(8) - cat.count_upto(7) == 13);
  CHECK(cat.size() - cat.count_upto(8) == 55);
}

TEST_CASE("the smallest entries are K4 and K2,3") {
  const Catalog& cat = catalog();
  CHECK(isomorphic(cat.at({4, 6, 1}).graph, SmallGraph::complete(4)));
  CHECK(isomorphic(cat.at({5, 6, 1}).graph, SmallGraph::complete_bipartite(2, 3)));
  CHECK(cat.entries().front().id == EntryId{4, 6, 1});
}

TEST_CASE("labels match vertex and edge counts, in (n,m,i) order") {
  const auto& es = catalog().entries();
  for (std::size_t k = 0; k < es.size(); ++k) {
    CAPTURE(es[k].id.str());
    CHECK(es[k].graph.order() == es[k].id.n);
    CHECK(es[k].graph.size() == es[k].id.m);
    CHECK(is_connected(es[k].graph));
    if (k > 0) CHECK(es[k - 1].id < es[k].id);
  }
}

TEST_CASE("entries are pairwise non-isomorphic and pairwise minimal") {
  const auto& es = catalog().entries();
  for (const auto& a : es) {
    for (const auto& b : es) {
      if (&a == &b) continue;
      CAPTURE(a.id.str(), b.id.str());
      CHECK_FALSE(isomorphic(a.graph, b.graph));
      CHECK_FALSE(contains_subgraph(b.graph, a.graph));
    }
  }
}

TEST_CASE("every entry is biconnected") {
  // A forbidden graph with a cut vertex has a forbidden block, so a minimal one cannot.
  for (const auto& e : catalog().entries()) {
    CAPTURE(e.id.str());
    CHECK(is_biconnected(e.graph));
  }
}

TEST_CASE("find_forbidden examples") {
  const Catalog& cat = catalog();
  const auto k5 = find_forbidden(cat, SmallGraph::complete(5));
  REQUIRE(k5);
  CHECK(k5->entry->id == EntryId{4, 6, 1});
  CHECK(is_valid_witness(SmallGraph::complete(5), k5->entry->graph, k5->witness));
  CHECK_FALSE(find_forbidden(cat, SmallGraph::cycle(9)));
  CHECK_FALSE(find_forbidden(cat, SmallGraph::complete_bipartite(2, 2)));
  const auto k24 = find_forbidden(cat, SmallGraph::complete_bipartite(2, 4));
  REQUIRE(k24);
  CHECK(k24->entry->id == EntryId{5, 6, 1});
}

TEST_CASE("find_forbidden honors max_n") {
  const Catalog& cat = catalog();
  const ForbiddenEntry& big = cat.entries().back();
  CHECK(find_forbidden(cat, big.graph, 9));
  CHECK_FALSE(find_forbidden(cat, big.graph, 8));
  const auto all = find_all_forbidden(cat, big.graph);
  REQUIRE(all.size() == 1);
  CHECK(all[0].entry == &big);
}

TEST_CASE("find_forbidden agrees with a contains_subgraph scan") {
  const Catalog& cat = catalog();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 6 + static_cast<int>(rng() % 5);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 100 < 40) edges.emplace_back(u, v);
    const SmallGraph g = SmallGraph::from_edges(n, edges);
    const ForbiddenEntry* first = nullptr;
    for (const auto& e : cat.entries())
      if (contains_subgraph(g, e.graph)) {
        first = &e;
        break;
      }
    const auto hit = find_forbidden(cat, g);
    REQUIRE(hit.has_value() == (first != nullptr));
    if (hit) {
      CHECK(hit->entry == first);
      CHECK(is_valid_witness(g, hit->entry->graph, hit->witness));
    }
  }
}

TEST_CASE("catalog-free biconnected graphs on 8 vertices number 366") {
  std::size_t free = 0;
  for (const auto& g : generate(8, Filter::biconnected))
    if (!find_forbidden(catalog(), g, 8)) ++free;
  CHECK(free == 366);
}

TEST_CASE("every single-edge deletion of every entry embeds numerically") {
  const Embedder embed = numeric_embedder();
  std::size_t checks = 0;
  for (const auto& e : catalog().entries()) {
    const MinimalityReport r = validate_minimality(e, embed);
    CAPTURE(e.id.str());
    if (auto bad = r.first_failure()) FAIL("edge " << bad->first << "-" << bad->second << " does not embed");
    for (const auto& c : r.checks) CHECK(c.residual < kResidualTolerance);
    checks += r.checks.size();
  }
  CHECK(checks == 1021);
}

TEST_CASE("entries themselves resist the numeric embedder") {
  for (const auto& e : catalog().entries()) {
    CAPTURE(e.id.str());
    const SolveReport r = solve_numeric_report(e.graph);
    CHECK_FALSE(r.embedding);
    CHECK(r.best_residual > 1e-4);
  }
}

TEST_CASE("validate_minimality names the failing edge") {
  ForbiddenEntry fake{{4, 6, 9}, SmallGraph::complete(4), "test", {}};
  const MinimalityReport ok = validate_minimality(fake, numeric_embedder());
  CHECK(ok.ok());
  CHECK(ok.checks.size() == 6);
  // An embedder that rejects graphs missing edge 1-2.
  const MinimalityReport bad = validate_minimality(fake, [](const SmallGraph& g) {
    return std::pair{g.has_edge(1, 2), 0.0};
  });
  REQUIRE(bad.first_failure());
  CHECK(*bad.first_failure() == Edge{1, 2});
}

TEST_CASE("catalog.g6 and catalog.json agree line by line") {
  std::ifstream in(default_data_dir() / "catalog.g6");
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);)
    if (!l.empty()) lines.push_back(l);
  REQUIRE(lines.size() == 74);
  for (std::size_t k = 0; k < lines.size(); ++k) CHECK(parse_graph6(lines[k]) == catalog().entries()[k].graph);
}

TEST_CASE("corrupt catalog data is reported with the entry id") {
  nlohmann::json doc = raw_catalog();
  doc["entries"][7]["edges"][0] = {0, 7};
  const std::string id = doc["entries"][7]["id"];
  try {
    parse_catalog(doc);
    FAIL("expected a CatalogError");
  } catch (const CatalogError& e) {
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring(id));
  }

  doc = raw_catalog();
  doc["entries"][3]["n"] = 9;
  CHECK_THROWS_AS(parse_catalog(doc), CatalogError);

  doc = raw_catalog();
  doc["format"] = "something-else";
  CHECK_THROWS_AS(parse_catalog(doc), CatalogError);

  CHECK_THROWS_AS(load_catalog("/nonexistent"), CatalogError);
}

TEST_CASE("check_catalog rejects a non-minimal entry") {
  std::vector<ForbiddenEntry> es = catalog().entries();
  // Same label, but the graph now contains K4.
  es.back().graph = SmallGraph::from_edges(9, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5},
                                                {5, 6}, {6, 7}, {7, 8}, {8, 0}, {4, 6}, {5, 7}, {6, 8}});
  try {
    check_catalog(Catalog(es));
    FAIL("expected a CatalogError");
  } catch (const CatalogError& e) {
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("F(4,6,1)"));
  }
}

TEST_CASE("entry ids parse and print") {
  CHECK(EntryId::parse("F(8,13,6)") == EntryId{8, 13, 6});
  CHECK(EntryId::parse("9,15,34").str() == "F(9,15,34)");
  CHECK_THROWS_AS(EntryId::parse("F(8,13)"), std::invalid_argument);
  CHECK_THROWS_AS(EntryId::parse("G(8,13,6)"), std::invalid_argument);
}

TEST_CASE("entry JSON carries graph6 and the canonical form") {
  const auto& e = catalog().at({5, 6, 1});
  const nlohmann::json j = to_json(e);
  CHECK(j["id"] == "F(5,6,1)");
  CHECK(parse_graph6(j["graph6"].get<std::string>()) == e.graph);
  CHECK(j["canonical"] == canonical_form(SmallGraph::complete_bipartite(2, 3)).bytes);
  CHECK(j["edges"].size() == 6);
}
