#include <catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "udg/classify.hpp"
#include "udg/enumerate.hpp"
#include "udg/pipeline.hpp"
#include "udg/render.hpp"

using namespace udg;

namespace {

const ClassifyContext& context() {
  static const ClassifyContext ctx = load_context();
  return ctx;
}

SmallGraph unit_graph(const PointSet& ps) { return SmallGraph::from_edges(ps.size(), ps.unit_pairs); }

SmallGraph relabel(const SmallGraph& g, const std::vector<int>& perm) {
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  return SmallGraph::from_edges(g.order(), edges);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("udg_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("classify examples") {
  const ClassifyContext& ctx = context();
  const ClassificationReport k4 = classify(std::string("C~"), ctx);
  CHECK(k4.verdict == Classification::forbidden);
  REQUIRE(k4.blocks.size() == 1);
  CHECK(k4.blocks[0].method == Method::catalog);
  CHECK(k4.blocks[0].source == "F(4,6,1)");
  CHECK(k4.definitive);

  for (const char* name : {"H1", "H2"}) {
    CAPTURE(name);
    const PointSet* h = ctx.host(name);
    REQUIRE(h != nullptr);
    const ClassificationReport r = classify(unit_graph(*h), ctx);
    CHECK(r.verdict == Classification::unit_distance);
    CHECK(r.residual < kResidualTolerance);
    CHECK(verify_report(r, ctx));
  }

  const ClassificationReport f = classify(ctx.catalog.at({9, 15, 34}).graph, ctx);
  CHECK(f.verdict == Classification::forbidden);
  CHECK(f.blocks.at(0).source == "F(9,15,34)");
  CHECK_THROWS(classify(std::string("not graph6!"), ctx));
}

TEST_CASE("graphs on at most 5 vertices are forbidden exactly when they contain K4 or K2,3") {
  const ClassifyContext& ctx = context();
  const SmallGraph k4 = SmallGraph::complete(4), k23 = SmallGraph::complete_bipartite(2, 3);
  std::size_t total = 0;
  for (int n = 1; n <= 5; ++n) {
    for (const auto& g : generate(n, Filter::all)) {
      CAPTURE(to_graph6(g));
      const bool expect_forbidden = contains_subgraph(g, k4).has_value() || contains_subgraph(g, k23).has_value();
      const ClassificationReport r = classify(g, ctx);
      CHECK(r.verdict == (expect_forbidden ? Classification::forbidden : Classification::unit_distance));
      CHECK(verify_report(r, ctx));
      ++total;
    }
  }
  CHECK(total == 1 + 2 + 4 + 11 + 34);
}

TEST_CASE("classify is invariant under relabeling") {
  const ClassifyContext& ctx = context();
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 5);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 100 < 35) edges.emplace_back(u, v);
    const SmallGraph g = SmallGraph::from_edges(n, edges);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const SmallGraph h = relabel(g, perm);
    CAPTURE(to_graph6(g), to_graph6(h));
    const ClassificationReport a = classify(g, ctx), b = classify(h, ctx);
    CHECK(a.verdict == b.verdict);
    CHECK(a.verdict != Classification::undecided);
    CHECK(verify_report(a, ctx));
    CHECK(verify_report(b, ctx));
  }
}

TEST_CASE("blocks glue at cut vertices without collisions") {
  const ClassifyContext& ctx = context();
  // Four triangles around one cut vertex, a pendant path and a separate edge.
  const SmallGraph g = SmallGraph::from_edges(
      13, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}, {0, 5}, {5, 6}, {6, 0}, {0, 7}, {7, 8}, {8, 0}, {8, 9}, {9, 10}, {11, 12}});
  const ClassificationReport r = classify(g, ctx);
  REQUIRE(r.verdict == Classification::unit_distance);
  CHECK(r.blocks.size() == 7);
  CHECK(r.residual < kResidualTolerance);
  CHECK(min_separation(r.coords) >= kSolverSeparation);
  CHECK(verify_report(r, ctx));
}

TEST_CASE("one forbidden block makes the whole graph forbidden") {
  const ClassifyContext& ctx = context();
  const SmallGraph g =
      SmallGraph::from_edges(7, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 4}});
  const ClassificationReport r = classify(g, ctx);
  CHECK(r.verdict == Classification::forbidden);
  CHECK(verify_report(r, ctx));
  const auto j = to_json(r);
  CHECK(j["verdict"] == "forbidden");
  CHECK_FALSE(j.contains("coords"));
}

TEST_CASE("tampered reports fail verification") {
  const ClassifyContext& ctx = context();
  ClassificationReport r = classify(SmallGraph::cycle(5), ctx);
  REQUIRE(r.verdict == Classification::unit_distance);
  REQUIRE(verify_report(r, ctx));
  r.coords[0].x += 0.01;
  CHECK_FALSE(verify_report(r, ctx));

  ClassificationReport f = classify(SmallGraph::complete(4), ctx);
  REQUIRE(f.verdict == Classification::forbidden);
  f.blocks[0].mapping = {0, 0, 1, 2};
  CHECK_FALSE(verify_report(f, ctx));
}

TEST_CASE("stage 8 reproduces its counts deterministically across thread counts") {
  const ClassifyContext& ctx = context();
  const auto one = fresh_dir("t1"), three = fresh_dir("t3");
  const PipelineSummary a = reproduce("8", ctx, {1, one});
  const PipelineSummary b = reproduce("8", ctx, {3, three});
  CHECK(a.ok());
  CHECK(b.ok());
  REQUIRE(a.stages.size() == 3);
  CHECK(a.stages[0].count == 7123);
  CHECK(a.stages[1].count == 366);
  CHECK(a.stages[2].count == 366);
  for (const char* f : {"n8_biconnected.g6", "n8_catalog_free.g6", "n8_outside_g27.g6"}) {
    CAPTURE(f);
    REQUIRE(std::filesystem::exists(one / f));
    CHECK(slurp(one / f) == slurp(three / f));
  }
  CHECK(slurp(one / "n8_outside_g27.g6").empty());
  const std::string free = slurp(one / "n8_catalog_free.g6");
  CHECK(std::count(free.begin(), free.end(), '\n') == 366);
  CHECK_THROWS_AS(reproduce("10", ctx, {}), std::invalid_argument);
  std::filesystem::remove_all(one);
  std::filesystem::remove_all(three);
}

TEST_CASE("render draws unit edges at a uniform scale") {
  const ClassifyContext& ctx = context();
  const SmallGraph k3 = SmallGraph::complete(3);
  const ClassificationReport r = classify(k3, ctx);
  REQUIRE(r.verdict == Classification::unit_distance);
  const std::string svg = render(drawing_of(k3, r.coords), RenderFormat::svg);
  CHECK(svg.rfind("<svg", 0) == 0);
  std::size_t lines = 0;
  for (std::size_t p = svg.find("<line"); p != std::string::npos; p = svg.find("<line", p + 1)) ++lines;
  CHECK(lines == 3);
  CHECK(svg == render(drawing_of(k3, r.coords), RenderFormat::svg));

  const PointSet* g27 = ctx.host("G27");
  REQUIRE(g27 != nullptr);
  const std::string tikz = render(drawing_of(*g27), RenderFormat::tikz);
  std::size_t draws = 0, nodes = 0;
  for (std::size_t p = tikz.find("\\draw"); p != std::string::npos; p = tikz.find("\\draw", p + 1)) ++draws;
  for (std::size_t p = tikz.find("\\coordinate"); p != std::string::npos; p = tikz.find("\\coordinate", p + 1)) ++nodes;
  CHECK(nodes == 27);
  CHECK(draws == 57);

  CHECK_THROWS_AS(render(Drawing{}, RenderFormat::svg), std::invalid_argument);
  CHECK_THROWS_AS(drawing_of(k3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_render_format("png"), std::invalid_argument);
}
