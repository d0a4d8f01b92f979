#pragma once

// Per-graph classification: split into blocks, decide each block with the
// catalog, the witness hosts, the numeric solver and the reasoner, then glue
// the block embeddings at cut vertices.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "udg/catalog.hpp"
#include "udg/certify.hpp"
#include "udg/connectivity.hpp"
#include "udg/embed.hpp"
#include "udg/reasoner.hpp"

namespace udg {

enum class Classification { unit_distance, forbidden, undecided };

inline std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::unit_distance: return "unit-distance";
    case Classification::forbidden: return "forbidden";
    case Classification::undecided: return "undecided-evidence";
  }
  return "?";
}

/// Catalog plus certified witness hosts.
struct ClassifyContext {
  Catalog catalog;
  std::vector<PointSet> hosts;  // G27, G118, H1, H2
  std::vector<WideHost> host_graphs;
  int budget = 200;
  std::uint64_t seed = 1;

  const PointSet* host(const std::string& name) const {
    for (const auto& h : hosts)
      if (h.name == name) return &h;
    return nullptr;
  }
};

inline ClassifyContext load_context(const std::filesystem::path& dir = default_data_dir(),
                                    int max_bits = kMaxPrecisionBits) {
  ClassifyContext ctx;
  ctx.catalog = load_catalog(dir);
  for (const char* f : {"g27.json", "g118.json", "h1.json", "h2.json"}) {
    ctx.hosts.push_back(build_pointset(load_table(dir / f), max_bits).points);
    ctx.host_graphs.push_back(ctx.hosts.back().host());
  }
  return ctx;
}

enum class Method { trivial, catalog, host, numeric, reasoner, none };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::trivial: return "trivial";
    case Method::catalog: return "catalog";
    case Method::host: return "host";
    case Method::numeric: return "numeric";
    case Method::reasoner: return "reasoner";
    case Method::none: return "none";
  }
  return "?";
}

struct BlockReport {
  std::vector<int> vertices;  // block vertex -> vertex of the input graph
  SmallGraph graph;
  Classification verdict = Classification::undecided;
  Method method = Method::none;
  std::string source;           // catalog entry or host name
  std::vector<int> mapping;     // catalog pattern -> block, or block -> host point
  std::vector<Vec2> coords;     // block embedding when unit-distance
  std::optional<ProofTrace> trace;
  double best_residual = 0;     // numeric evidence when undecided
};

struct ClassificationReport {
  std::string graph6;
  SmallGraph graph;
  Classification verdict = Classification::undecided;
  bool definitive = false;  // n <= 9
  std::vector<BlockReport> blocks;
  std::vector<Vec2> coords;  // whole-graph embedding when unit-distance
  double residual = 0;
};

inline BlockReport classify_block(const SmallGraph& b, const ClassifyContext& ctx) {
  BlockReport r;
  r.graph = b;
  if (b.order() <= 2) {
    r.verdict = Classification::unit_distance;
    r.method = Method::trivial;
    r.coords = b.order() == 1 ? std::vector<Vec2>{{0, 0}} : std::vector<Vec2>{{0, 0}, {1, 0}};
    return r;
  }
  if (auto hit = find_forbidden(ctx.catalog, b, 9)) {
    r.verdict = Classification::forbidden;
    r.method = Method::catalog;
    r.source = hit->entry->id.str();
    r.mapping = hit->witness.mapping;
    return r;
  }
  for (std::size_t k = 0; k < ctx.hosts.size(); ++k) {
    if (auto w = embed_into(b, ctx.host_graphs[k])) {
      r.verdict = Classification::unit_distance;
      r.method = Method::host;
      r.source = ctx.hosts[k].name;
      r.mapping = w->mapping;
      for (int p : w->mapping) r.coords.push_back(ctx.hosts[k].coords[p]);
      return r;
    }
  }
  const SolveReport s = solve_numeric_report(b, ctx.seed, ctx.budget);
  if (s.embedding) {
    r.verdict = Classification::unit_distance;
    r.method = Method::numeric;
    r.coords = s.embedding->coords;
    return r;
  }
  r.best_residual = s.best_residual;
  if (auto t = prove_forbidden(b, &ctx.catalog)) {
    r.verdict = Classification::forbidden;
    r.method = Method::reasoner;
    r.trace = std::move(t);
  }
  return r;
}

namespace detail {

inline bool clear_of(const std::vector<std::optional<Vec2>>& placed, const std::vector<Vec2>& pts, int skip) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (static_cast<int>(i) == skip) continue;
    for (const auto& q : placed)
      if (q && dist(*q, pts[i]) < kSolverSeparation) return false;
  }
  return true;
}

// Places each block by a translation onto its already placed cut vertex and
// the first rotation that keeps every new point clear of the placed ones.
inline std::optional<std::vector<Vec2>> glue(int n, const std::vector<BlockReport>& blocks) {
  std::vector<std::optional<Vec2>> placed(n);
  std::vector<bool> done(blocks.size(), false);
  double right = 0;
  for (std::size_t count = 0; count < blocks.size(); ++count) {
    std::size_t pick = blocks.size();
    int anchor = -1;
    for (std::size_t k = 0; k < blocks.size() && pick == blocks.size(); ++k) {
      if (done[k]) continue;
      for (std::size_t i = 0; i < blocks[k].vertices.size(); ++i)
        if (placed[blocks[k].vertices[i]]) {
          pick = k;
          anchor = static_cast<int>(i);
          break;
        }
    }
    if (pick == blocks.size()) {
      pick = static_cast<std::size_t>(std::find(done.begin(), done.end(), false) - done.begin());
    }
    const BlockReport& b = blocks[pick];
    std::vector<Vec2> pts;
    if (anchor < 0) {
      // New component: shift it to the right of everything placed so far.
      double min_x = 0;
      for (const auto& p : b.coords) min_x = std::min(min_x, p.x);
      for (const auto& p : b.coords) pts.push_back({p.x - min_x + right + 2, p.y});
    } else {
      const Vec2 c = b.coords[anchor];
      const Vec2 target = *placed[b.vertices[anchor]];
      bool ok = false;
      for (int k = 0; k < 720 && !ok; ++k) {
        const double t = k * 2.399963229728653;  // golden angle
        pts.clear();
        for (const auto& p : b.coords) {
          const Vec2 d = p - c;
          pts.push_back(target + Vec2{std::cos(t) * d.x - std::sin(t) * d.y, std::sin(t) * d.x + std::cos(t) * d.y});
        }
        ok = clear_of(placed, pts, anchor);
      }
      if (!ok) return std::nullopt;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      placed[b.vertices[i]] = pts[i];
      right = std::max(right, pts[i].x);
    }
    done[pick] = true;
  }
  std::vector<Vec2> out;
  for (const auto& p : placed) out.push_back(p.value_or(Vec2{}));
  return out;
}

}  // namespace detail

inline ClassificationReport classify(const SmallGraph& g, const ClassifyContext& ctx) {
  ClassificationReport rep;
  rep.graph = g;
  rep.graph6 = to_graph6(g);
  rep.definitive = g.order() <= 9;
  bool all_unit = true;
  for (auto& blk : biconnected_components(g)) {
    BlockReport b = classify_block(blk.graph, ctx);
    b.vertices = std::move(blk.vertices);
    all_unit = all_unit && b.verdict == Classification::unit_distance;
    if (b.verdict == Classification::forbidden) rep.verdict = Classification::forbidden;
    rep.blocks.push_back(std::move(b));
  }
  if (rep.verdict == Classification::forbidden) return rep;
  if (!all_unit) return rep;
  if (g.order() == 0) {
    rep.verdict = Classification::unit_distance;
    return rep;
  }
  if (auto coords = detail::glue(g.order(), rep.blocks)) {
    rep.coords = std::move(*coords);
    rep.residual = edge_residual(g, rep.coords);
    rep.verdict = Classification::unit_distance;
  }
  return rep;
}

inline ClassificationReport classify(const std::string& graph6, const ClassifyContext& ctx) {
  return classify(parse_graph6(graph6), ctx);
}

/// Re-checks the report's evidence from scratch.
inline bool verify_report(const ClassificationReport& r, const ClassifyContext& ctx) {
  const SmallGraph& g = r.graph;
  switch (r.verdict) {
    case Classification::unit_distance: {
      if (static_cast<int>(r.coords.size()) != g.order()) return false;
      if (edge_residual(g, r.coords) >= kResidualTolerance) return false;
      if (g.order() > 1 && min_separation(r.coords) < kSeparation) return false;
      for (const auto& b : r.blocks) {
        if (b.method != Method::host) continue;
        const PointSet* h = ctx.host(b.source);
        if (h == nullptr || b.mapping.size() != b.vertices.size()) return false;
        for (const auto& [u, v] : b.graph.edges()) {
          const Edge e{std::min(b.mapping[u], b.mapping[v]), std::max(b.mapping[u], b.mapping[v])};
          if (std::find(h->unit_pairs.begin(), h->unit_pairs.end(), e) == h->unit_pairs.end()) return false;
        }
      }
      return true;
    }
    case Classification::forbidden:
      for (const auto& b : r.blocks) {
        if (b.verdict != Classification::forbidden) continue;
        if (b.method == Method::catalog) {
          const ForbiddenEntry* e = ctx.catalog.find(EntryId::parse(b.source));
          if (e != nullptr && is_valid_witness(b.graph, e->graph, SubgraphWitness{b.mapping})) return true;
        } else if (b.method == Method::reasoner && b.trace) {
          if (replay(b.graph, *b.trace, &ctx.catalog)) return true;
        }
      }
      return false;
    case Classification::undecided:
      return true;
  }
  return false;
}

inline nlohmann::json to_json(const ClassificationReport& r) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : r.blocks) {
    nlohmann::json j{{"vertices", b.vertices},
                     {"graph6", to_graph6(b.graph)},
                     {"verdict", to_string(b.verdict)},
                     {"method", to_string(b.method)}};
    if (!b.source.empty()) j["source"] = b.source;
    if (!b.mapping.empty()) j["mapping"] = b.mapping;
    if (b.trace) j["proof"] = to_json(*b.trace);
    if (b.verdict == Classification::undecided) j["best_residual"] = b.best_residual;
    blocks.push_back(std::move(j));
  }
  nlohmann::json j{{"graph6", r.graph6},
                   {"verdict", to_string(r.verdict)},
                   {"definitive", r.definitive},
                   {"blocks", blocks}};
  if (r.verdict == Classification::unit_distance) {
    nlohmann::json coords = nlohmann::json::array();
    for (const auto& p : r.coords) coords.push_back({p.x, p.y});
    j["coords"] = coords;
    j["residual"] = r.residual;
  }
  return j;
}

}  // namespace udg
