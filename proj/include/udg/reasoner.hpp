#pragma once

// Forced-edge closure and rigid-motif contradictions. Every verdict is sound
// (it implies the input has no unit-distance embedding); failing to find one
// says nothing.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "udg/catalog.hpp"
#include "udg/small_graph.hpp"
#include "udg/subgraph.hpp"

namespace udg {

/// Non-edge of `pattern` that is at distance 1 in every embedding.
struct PatternRule {
  std::string id;
  SmallGraph pattern;
  Edge forced_pair;
};

enum class ForcedDistance { sqrt3, two, sqrt7, three, sqrt12 };

inline double value(ForcedDistance d) {
  switch (d) {
    case ForcedDistance::sqrt3: return 1.7320508075688772;
    case ForcedDistance::two: return 2.0;
    case ForcedDistance::sqrt7: return 2.6457513110645907;
    case ForcedDistance::three: return 3.0;
    case ForcedDistance::sqrt12: return 3.4641016151377544;
  }
  return 0;
}

inline std::string_view to_string(ForcedDistance d) {
  switch (d) {
    case ForcedDistance::sqrt3: return "sqrt(3)";
    case ForcedDistance::two: return "2";
    case ForcedDistance::sqrt7: return "sqrt(7)";
    case ForcedDistance::three: return "3";
    case ForcedDistance::sqrt12: return "sqrt(12)";
  }
  return "?";
}

/// Rigid graph whose anchor pair sits at the same distance in every embedding.
struct RigidMotif {
  std::string id;
  SmallGraph motif;
  Edge anchors;
  ForcedDistance forced;
};

namespace detail {

inline SmallGraph one_based(int n, std::initializer_list<Edge> edges) {
  std::vector<Edge> e;
  for (const auto& [u, v] : edges) e.emplace_back(u - 1, v - 1);
  return SmallGraph::from_edges(n, e);
}

}  // namespace detail

/// The totally unfaithful patterns (the last one forces two pairs).
inline const std::vector<PatternRule>& pattern_rules() {
  using detail::one_based;
  static const std::vector<PatternRule> rules = [] {
    const SmallGraph p1 = one_based(6, {{6, 4}, {4, 1}, {1, 2}, {2, 3}, {3, 6}, {6, 5}, {5, 2}, {1, 3}});
    const SmallGraph p2 = one_based(
        7, {{5, 1}, {3, 1}, {1, 2}, {2, 3}, {3, 5}, {5, 6}, {6, 7}, {7, 3}, {3, 6}, {2, 4}, {4, 3}});
    const SmallGraph p3 = one_based(
        7, {{5, 1}, {3, 1}, {1, 2}, {2, 3}, {3, 5}, {5, 6}, {6, 7}, {7, 3}, {3, 6}, {7, 4}, {4, 2}});
    const SmallGraph p4 = one_based(
        8, {{3, 1}, {1, 2}, {2, 4}, {4, 3}, {3, 2}, {7, 5}, {5, 6}, {6, 8}, {8, 7}, {1, 5}, {3, 7}, {4, 8}});
    return std::vector<PatternRule>{
        {"unfaithful-1", p1, {3, 4}},
        {"unfaithful-2", p2, {6, 3}},
        {"unfaithful-3", p3, {2, 3}},
        {"unfaithful-4a", p4, {6, 5}},
        {"unfaithful-4b", p4, {5, 1}},
    };
  }();
  return rules;
}

inline const std::vector<RigidMotif>& rigid_motifs() {
  using detail::one_based;
  static const std::vector<RigidMotif> motifs = {
      {"strip2", one_based(4, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}}), {0, 3}, ForcedDistance::sqrt3},
      {"strip3", one_based(5, {{1, 2}, {2, 3}, {1, 4}, {4, 2}, {2, 5}, {5, 3}, {4, 5}}), {0, 2},
       ForcedDistance::two},
      {"hex",
       one_based(7, {{5, 1}, {3, 1}, {1, 2}, {2, 3}, {3, 5}, {5, 6}, {6, 3}, {2, 4}, {4, 3}, {4, 7}, {7, 2}}),
       {5, 6}, ForcedDistance::sqrt7},
      {"col3",
       one_based(7, {{4, 1}, {1, 2}, {2, 3}, {3, 5}, {5, 4}, {4, 2}, {2, 5}, {5, 6}, {6, 3}, {3, 7}, {7, 6}}),
       {0, 6}, ForcedDistance::three},
      // Two rhombus-translated strip3 copies; the far corners end up at distance 2.
      {"ladder",
       SmallGraph::from_edges(
           8, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {1, 4}, {1, 6}, {2, 4}, {3, 5}, {4, 7}, {5, 6}, {6, 7}}),
       {5, 7}, ForcedDistance::two},
      // Triangle complex bent around a shared vertex, anchors collinear at distance 3.
      {"bent3",
       SmallGraph::from_edges(8, {{0, 1}, {0, 2}, {0, 5}, {1, 2}, {1, 4}, {1, 5}, {1, 7}, {2, 4}, {3, 4},
                                  {3, 6}, {3, 7}, {4, 6}, {4, 7}}),
       {5, 6}, ForcedDistance::three},
      // Six-triangle strip turning up at its far end.
      {"elbow",
       SmallGraph::from_edges(8, {{0, 1}, {0, 2}, {1, 2}, {1, 4}, {2, 3}, {2, 4}, {3, 4}, {3, 6}, {4, 5},
                                  {4, 6}, {5, 6}, {5, 7}, {6, 7}}),
       {0, 7}, ForcedDistance::sqrt12},
  };
  return motifs;
}

enum class Verdict {
  contains_k4,
  contains_k23,
  contains_forbidden_entry,
  distance_gt2_common_neighbor,
  distance2_two_common_neighbors,
  distance3_path_conflict,
};

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::contains_k4: return "contains-K4";
    case Verdict::contains_k23: return "contains-K2,3";
    case Verdict::contains_forbidden_entry: return "contains-forbidden-entry";
    case Verdict::distance_gt2_common_neighbor: return "distance>2-with-common-neighbor";
    case Verdict::distance2_two_common_neighbors: return "distance-2-with-two-common-neighbors";
    case Verdict::distance3_path_conflict: return "distance-3-path-conflict";
  }
  return "?";
}

inline Verdict parse_verdict(std::string_view s) {
  for (Verdict v : {Verdict::contains_k4, Verdict::contains_k23, Verdict::contains_forbidden_entry,
                    Verdict::distance_gt2_common_neighbor, Verdict::distance2_two_common_neighbors,
                    Verdict::distance3_path_conflict}) {
    if (to_string(v) == s) return v;
  }
  throw std::invalid_argument("unknown verdict '" + std::string(s) + "'");
}

struct ForcedEdge {
  Edge pair;  // (min, max)
  const PatternRule* rule = nullptr;
  SubgraphWitness witness;
};

struct ProofStep {
  std::string rule;
  std::vector<int> mapping;
  Edge added;
};

/// `evidence` is the verdict's witness in the closed graph: the K4 / K2,3 /
/// catalog-entry / motif mapping. `extra` holds the offending common
/// neighbors, or the interior vertices of two 3-paths (x1, y1, x2, y2).
struct ProofTrace {
  std::vector<ProofStep> steps;
  Verdict verdict = Verdict::contains_k4;
  std::string source;  // motif id or catalog entry id, when relevant
  std::vector<int> evidence;
  std::vector<int> extra;
};

struct Closure {
  SmallGraph graph;
  std::vector<ProofStep> steps;
};

/// One witness per forced non-edge of g, ordered by pair.
inline std::vector<ForcedEdge> forced_edges(const SmallGraph& g) {
  std::vector<ForcedEdge> out;
  const SmallHost host = SmallHost::from_small(g);
  for (int x = 0; x < g.order(); ++x) {
    for (int y = x + 1; y < g.order(); ++y) {
      if (g.has_edge(x, y)) continue;
      std::optional<ForcedEdge> hit;
      for (const auto& rule : pattern_rules()) {
        const auto [a, b] = rule.forced_pair;
        for (const auto& [p, q] : {Edge{x, y}, Edge{y, x}}) {
          const std::pair<int, int> fixed[2] = {{a, p}, {b, q}};
          if (auto w = SubgraphMatcher<1>(rule.pattern, host).first(fixed)) {
            hit = ForcedEdge{{x, y}, &rule, std::move(*w)};
            break;
          }
        }
        if (hit) break;
      }
      if (hit) out.push_back(std::move(*hit));
    }
  }
  return out;
}

/// Adds forced edges round by round until none remain.
inline Closure closure(const SmallGraph& g) {
  Closure c{g, {}};
  for (;;) {
    const auto forced = forced_edges(c.graph);
    if (forced.empty()) return c;
    for (const auto& f : forced) {
      c.graph = c.graph.with_edge(f.pair.first, f.pair.second);
      c.steps.push_back(ProofStep{f.rule->id, f.witness.mapping, f.pair});
    }
  }
}

namespace detail {

inline Row common(const SmallGraph& g, int u, int v) { return static_cast<Row>(g.neighbors(u) & g.neighbors(v)); }

inline std::vector<int> bits_of(Row r) {
  std::vector<int> out;
  for_each_bit(r, [&](int v) { out.push_back(v); });
  return out;
}

// Interior pairs (x, y) of 3-paths u-x-y-v.
inline std::vector<Edge> three_paths(const SmallGraph& g, int u, int v) {
  std::vector<Edge> out;
  for_each_bit(g.neighbors(u), [&](int x) {
    if (x == v) return;
    for_each_bit(g.neighbors(v), [&](int y) {
      if (y != u && y != x && g.has_edge(x, y)) out.emplace_back(x, y);
    });
  });
  return out;
}

// Checks a motif verdict for the anchor pair (u, v); fills `extra`.
inline std::optional<Verdict> motif_conflict(const SmallGraph& g, const RigidMotif& m, int u, int v,
                                             std::vector<int>& extra) {
  const Row cn = common(g, u, v);
  switch (m.forced) {
    case ForcedDistance::sqrt3:
      return std::nullopt;
    case ForcedDistance::two:
      if (std::popcount(static_cast<unsigned>(cn)) >= 2) {
        extra = bits_of(cn);
        extra.resize(2);
        return Verdict::distance2_two_common_neighbors;
      }
      return std::nullopt;
    case ForcedDistance::sqrt7:
    case ForcedDistance::three:
    case ForcedDistance::sqrt12:
      if (cn != 0) {
        extra = {std::countr_zero(static_cast<unsigned>(cn))};
        return Verdict::distance_gt2_common_neighbor;
      }
      if (m.forced == ForcedDistance::three) {
        const auto paths = three_paths(g, u, v);
        if (paths.size() >= 2) {
          extra = {paths[0].first, paths[0].second, paths[1].first, paths[1].second};
          return Verdict::distance3_path_conflict;
        }
      }
      return std::nullopt;
  }
  return std::nullopt;
}

inline std::optional<std::vector<int>> find_pattern(const SmallGraph& g, const SmallGraph& pattern) {
  if (auto w = contains_subgraph(g, pattern)) return w->mapping;
  return std::nullopt;
}

}  // namespace detail

/// Attempts a mechanized forbiddenness proof. With a catalog, the closure may
/// also conclude by containing an entry on strictly fewer vertices than g.
inline std::optional<ProofTrace> prove_forbidden(const SmallGraph& g, const Catalog* catalog = nullptr) {
  Closure c = closure(g);
  ProofTrace t;
  t.steps = std::move(c.steps);
  const SmallGraph& h = c.graph;

  if (auto m = detail::find_pattern(h, SmallGraph::complete(4))) {
    t.verdict = Verdict::contains_k4;
    t.evidence = *m;
    return t;
  }
  if (auto m = detail::find_pattern(h, SmallGraph::complete_bipartite(2, 3))) {
    t.verdict = Verdict::contains_k23;
    t.evidence = *m;
    return t;
  }
  const SmallHost host = SmallHost::from_small(h);
  for (const auto& motif : rigid_motifs()) {
    std::optional<ProofTrace> found;
    SubgraphMatcher<1>(motif.motif, host).for_each([&](std::span<const int> img) {
      std::vector<int> extra;
      const auto v = detail::motif_conflict(h, motif, img[motif.anchors.first], img[motif.anchors.second], extra);
      if (!v) return true;
      t.verdict = *v;
      t.source = motif.id;
      t.evidence.assign(img.begin(), img.end());
      t.extra = std::move(extra);
      found = t;
      return false;
    });
    if (found) return found;
  }
  if (catalog != nullptr) {
    if (auto hit = find_forbidden(*catalog, h, g.order() - 1)) {
      t.verdict = Verdict::contains_forbidden_entry;
      t.source = hit->entry->id.str();
      t.evidence = hit->witness.mapping;
      return t;
    }
  }
  return std::nullopt;
}

/// Re-executes a trace against g from scratch. Returns the verdict it
/// establishes, or nullopt if any step or the final evidence does not check.
inline std::optional<Verdict> replay(const SmallGraph& g, const ProofTrace& t, const Catalog* catalog = nullptr) {
  SmallGraph h = g;
  for (const auto& s : t.steps) {
    const auto rule = std::find_if(pattern_rules().begin(), pattern_rules().end(),
                                   [&](const PatternRule& r) { return r.id == s.rule; });
    if (rule == pattern_rules().end()) return std::nullopt;
    if (!is_valid_witness(h, rule->pattern, SubgraphWitness{s.mapping})) return std::nullopt;
    const int x = s.mapping[rule->forced_pair.first];
    const int y = s.mapping[rule->forced_pair.second];
    if (Edge{std::min(x, y), std::max(x, y)} != s.added) return std::nullopt;
    if (h.has_edge(x, y)) return std::nullopt;
    h = h.with_edge(x, y);
  }

  auto check = [&](const SmallGraph& pattern) { return is_valid_witness(h, pattern, SubgraphWitness{t.evidence}); };
  switch (t.verdict) {
    case Verdict::contains_k4:
      return check(SmallGraph::complete(4)) ? std::optional(t.verdict) : std::nullopt;
    case Verdict::contains_k23:
      return check(SmallGraph::complete_bipartite(2, 3)) ? std::optional(t.verdict) : std::nullopt;
    case Verdict::contains_forbidden_entry: {
      if (catalog == nullptr) return std::nullopt;
      const ForbiddenEntry* e = catalog->find(EntryId::parse(t.source));
      if (e == nullptr || e->id.n >= g.order() || !check(e->graph)) return std::nullopt;
      return t.verdict;
    }
    default:
      break;
  }
  const auto motif = std::find_if(rigid_motifs().begin(), rigid_motifs().end(),
                                  [&](const RigidMotif& m) { return m.id == t.source; });
  if (motif == rigid_motifs().end() || !check(motif->motif)) return std::nullopt;
  const int u = t.evidence[motif->anchors.first];
  const int v = t.evidence[motif->anchors.second];
  auto in_range = [&](int x) { return x >= 0 && x < h.order(); };
  if (!std::all_of(t.extra.begin(), t.extra.end(), in_range)) return std::nullopt;
  switch (t.verdict) {
    case Verdict::distance_gt2_common_neighbor:
      if (value(motif->forced) <= 2) return std::nullopt;
      if (t.extra.size() != 1 || !h.has_edge(u, t.extra[0]) || !h.has_edge(v, t.extra[0])) return std::nullopt;
      return t.verdict;
    case Verdict::distance2_two_common_neighbors: {
      if (motif->forced != ForcedDistance::two || t.extra.size() != 2 || t.extra[0] == t.extra[1]) return std::nullopt;
      for (int w : t.extra)
        if (!h.has_edge(u, w) || !h.has_edge(v, w)) return std::nullopt;
      return t.verdict;
    }
    case Verdict::distance3_path_conflict: {
      if (motif->forced != ForcedDistance::three || t.extra.size() != 4) return std::nullopt;
      const int x1 = t.extra[0], y1 = t.extra[1], x2 = t.extra[2], y2 = t.extra[3];
      if (x1 == x2 && y1 == y2) return std::nullopt;
      for (const auto& [x, y] : {Edge{x1, y1}, Edge{x2, y2}}) {
        if (x == y || x == u || x == v || y == u || y == v) return std::nullopt;
        if (!h.has_edge(u, x) || !h.has_edge(x, y) || !h.has_edge(y, v)) return std::nullopt;
      }
      return t.verdict;
    }
    default:
      return std::nullopt;
  }
}

inline nlohmann::json to_json(const ProofTrace& t) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : t.steps)
    steps.push_back({{"rule", s.rule}, {"mapping", s.mapping}, {"added", {s.added.first, s.added.second}}});
  nlohmann::json j{{"steps", steps}, {"verdict", to_string(t.verdict)}, {"evidence", t.evidence}};
  if (!t.source.empty()) j["source"] = t.source;
  if (!t.extra.empty()) j["extra"] = t.extra;
  return j;
}

inline ProofTrace trace_from_json(const nlohmann::json& j) {
  ProofTrace t;
  for (const auto& s : j.at("steps")) {
    const auto& a = s.at("added");
    t.steps.push_back(ProofStep{s.at("rule").get<std::string>(), s.at("mapping").get<std::vector<int>>(),
                                Edge{a.at(0).get<int>(), a.at(1).get<int>()}});
  }
  t.verdict = parse_verdict(j.at("verdict").get<std::string>());
  t.evidence = j.at("evidence").get<std::vector<int>>();
  t.source = j.value("source", "");
  t.extra = j.value("extra", std::vector<int>{});
  return t;
}

}  // namespace udg
