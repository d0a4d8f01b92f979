#pragma once

// The minimal forbidden graphs F(n,m,i) on up to 9 vertices, loaded from
// data/catalog.json and cross-checked against data/catalog.g6.

#include <algorithm>
#include <array>
#include <compare>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "udg/canonical.hpp"
#include "udg/small_graph.hpp"
#include "udg/subgraph.hpp"

namespace udg {

inline std::filesystem::path default_data_dir() {
#ifdef UDG_DATA_DIR
  return UDG_DATA_DIR;
#else
  return "data";
#endif
}

struct EntryId {
  int n = 0;
  int m = 0;
  int i = 0;

  std::string str() const {
    return "F(" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(i) + ")";
  }

  /// Accepts "F(8,13,6)" or "8,13,6".
  static EntryId parse(std::string_view s) {
    std::string t(s);
    if (t.size() > 2 && t[0] == 'F' && t[1] == '(' && t.back() == ')') t = t.substr(2, t.size() - 3);
    EntryId id;
    char c1 = 0, c2 = 0;
    std::istringstream in(t);
    if (!(in >> id.n >> c1 >> id.m >> c2 >> id.i) || c1 != ',' || c2 != ',' || !in.eof()) {
      throw std::invalid_argument("malformed catalog id '" + std::string(s) + "'");
    }
    return id;
  }

  friend auto operator<=>(const EntryId&, const EntryId&) = default;
};

struct ForbiddenEntry {
  EntryId id;
  SmallGraph graph;
  std::string source;
  std::vector<std::array<std::string, 2>> drawn;  // vertex -> drawn coordinate expressions
};

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Catalog {
 public:
  Catalog() = default;
  explicit Catalog(std::vector<ForbiddenEntry> entries) : entries_(std::move(entries)) {}

  const std::vector<ForbiddenEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  std::size_t count_upto(int max_n) const {
    return static_cast<std::size_t>(
        std::count_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.id.n <= max_n; }));
  }

  const ForbiddenEntry* find(const EntryId& id) const {
    for (const auto& e : entries_)
      if (e.id == id) return &e;
    return nullptr;
  }

  const ForbiddenEntry& at(const EntryId& id) const {
    const ForbiddenEntry* e = find(id);
    if (e == nullptr) throw std::out_of_range("no catalog entry " + id.str());
    return *e;
  }

 private:
  std::vector<ForbiddenEntry> entries_;
};

struct ForbiddenHit {
  const ForbiddenEntry* entry = nullptr;
  SubgraphWitness witness;
};

namespace detail {

// Cheap necessary condition for pattern ⊆ host: sorted degrees dominate.
inline bool degrees_dominate(const SmallGraph& host, const SmallGraph& pattern) {
  std::array<int, kMaxVertices> hd{}, pd{};
  for (int v = 0; v < host.order(); ++v) hd[v] = host.degree(v);
  for (int v = 0; v < pattern.order(); ++v) pd[v] = pattern.degree(v);
  std::sort(hd.begin(), hd.begin() + host.order(), std::greater<>());
  std::sort(pd.begin(), pd.begin() + pattern.order(), std::greater<>());
  for (int k = 0; k < pattern.order(); ++k)
    if (pd[k] > hd[k]) return false;
  return true;
}

inline std::optional<SubgraphWitness> match(const SmallHost& host, const SmallGraph& host_graph,
                                            const SmallGraph& pattern) {
  if (pattern.order() > host_graph.order() || pattern.size() > host_graph.size()) return std::nullopt;
  if (!degrees_dominate(host_graph, pattern)) return std::nullopt;
  return SubgraphMatcher<1>(pattern, host).first();
}

}  // namespace detail

/// First catalog entry (in catalog order) with id.n <= max_n contained in g.
inline std::optional<ForbiddenHit> find_forbidden(const Catalog& cat, const SmallGraph& g, int max_n = 9) {
  const SmallHost host = SmallHost::from_small(g);
  for (const auto& e : cat.entries()) {
    if (e.id.n > max_n) break;
    if (auto w = detail::match(host, g, e.graph)) return ForbiddenHit{&e, std::move(*w)};
  }
  return std::nullopt;
}

/// Every contained entry with id.n <= max_n (diagnostics).
inline std::vector<ForbiddenHit> find_all_forbidden(const Catalog& cat, const SmallGraph& g, int max_n = 9) {
  const SmallHost host = SmallHost::from_small(g);
  std::vector<ForbiddenHit> out;
  for (const auto& e : cat.entries()) {
    if (e.id.n > max_n) break;
    if (auto w = detail::match(host, g, e.graph)) out.push_back(ForbiddenHit{&e, std::move(*w)});
  }
  return out;
}

/// Checks counts, per-entry label consistency, pairwise non-isomorphism and
/// pairwise minimality. Throws CatalogError naming the offending entry.
inline void check_catalog(const Catalog& cat) {
  const auto& es = cat.entries();
  if (es.size() != 74) throw CatalogError("catalog: expected 74 entries, found " + std::to_string(es.size()));
  if (cat.count_upto(7) != 6 || cat.count_upto(8) != 19) {
    throw CatalogError("catalog: expected 6 entries on <= 7 vertices and 13 on 8 vertices");
  }
  for (std::size_t k = 0; k < es.size(); ++k) {
    const auto& e = es[k];
    if (e.graph.order() != e.id.n || e.graph.size() != e.id.m) {
      throw CatalogError(e.id.str() + ": graph has " + std::to_string(e.graph.order()) + " vertices and " +
                         std::to_string(e.graph.size()) + " edges");
    }
    if (k > 0 && !(es[k - 1].id < e.id)) throw CatalogError(e.id.str() + ": entries out of (n,m,i) order");
  }
  for (std::size_t a = 0; a < es.size(); ++a) {
    const SmallHost host = SmallHost::from_small(es[a].graph);
    for (std::size_t b = 0; b < es.size(); ++b) {
      if (a == b) continue;
      if (detail::match(host, es[a].graph, es[b].graph)) {
        throw CatalogError(es[a].id.str() + ": contains " + es[b].id.str() + " (not minimal)");
      }
    }
  }
}

inline Catalog parse_catalog(const nlohmann::json& doc) {
  if (doc.value("format", "") != "udg-catalog/1") throw CatalogError("catalog: unknown format");
  std::vector<ForbiddenEntry> entries;
  for (const auto& j : doc.at("entries")) {
    const std::string name = j.value("id", "?");
    try {
      ForbiddenEntry e;
      e.id = EntryId::parse(name);
      if (j.at("n").get<int>() != e.id.n || j.at("m").get<int>() != e.id.m || j.at("i").get<int>() != e.id.i) {
        throw CatalogError("id fields disagree with the id string");
      }
      std::vector<Edge> edges;
      for (const auto& pr : j.at("edges")) edges.emplace_back(pr.at(0).get<int>(), pr.at(1).get<int>());
      e.graph = SmallGraph::from_edges(e.id.n, edges);
      if (static_cast<int>(edges.size()) != e.graph.size()) throw CatalogError("duplicate edge");
      if (parse_graph6(j.at("graph6").get<std::string>()) != e.graph) {
        throw CatalogError("graph6 does not match the edge list");
      }
      e.source = j.value("source", "");
      for (const auto& p : j.value("drawn", nlohmann::json::array()))
        e.drawn.push_back({p.at(0).get<std::string>(), p.at(1).get<std::string>()});
      entries.push_back(std::move(e));
    } catch (const CatalogError& err) {
      throw CatalogError(name + ": " + err.what());
    } catch (const std::exception& err) {
      throw CatalogError(name + ": " + err.what());
    }
  }
  return Catalog(std::move(entries));
}

inline Catalog load_catalog(const std::filesystem::path& dir = default_data_dir()) {
  const auto json_path = dir / "catalog.json";
  std::ifstream in(json_path);
  if (!in) throw CatalogError("catalog: cannot open " + json_path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const std::exception& err) {
    throw CatalogError("catalog: " + json_path.string() + ": " + err.what());
  }
  Catalog cat = parse_catalog(doc);

  const auto g6_path = dir / "catalog.g6";
  std::ifstream g6(g6_path);
  if (!g6) throw CatalogError("catalog: cannot open " + g6_path.string());
  std::string line;
  std::size_t k = 0;
  while (std::getline(g6, line)) {
    if (line.empty()) continue;
    if (k >= cat.size()) throw CatalogError("catalog.g6: more lines than catalog.json entries");
    const auto& e = cat.entries()[k];
    if (parse_graph6(line) != e.graph) throw CatalogError(e.id.str() + ": catalog.g6 line differs from catalog.json");
    ++k;
  }
  if (k != cat.size()) throw CatalogError("catalog.g6: fewer lines than catalog.json entries");
  check_catalog(cat);
  return cat;
}

struct EdgeDeletionCheck {
  Edge edge;
  bool embedded = false;
  double residual = 0;  // best residual reported by the embedder
};

struct MinimalityReport {
  EntryId id;
  std::vector<EdgeDeletionCheck> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.embedded; });
  }
  std::optional<Edge> first_failure() const {
    for (const auto& c : checks)
      if (!c.embedded) return c.edge;
    return std::nullopt;
  }
};

/// `embedder(g)` returns {embedded, residual} for a candidate graph.
using Embedder = std::function<std::pair<bool, double>(const SmallGraph&)>;

/// Embeds every single-edge-deleted subgraph of the entry.
inline MinimalityReport validate_minimality(const ForbiddenEntry& entry, const Embedder& embedder) {
  MinimalityReport r;
  r.id = entry.id;
  for (const auto& [u, v] : entry.graph.edges()) {
    const auto [ok, residual] = embedder(entry.graph.without_edge(u, v));
    r.checks.push_back({Edge{u, v}, ok, residual});
  }
  return r;
}

inline nlohmann::json to_json(const ForbiddenEntry& e) {
  nlohmann::json j;
  j["id"] = e.id.str();
  j["n"] = e.id.n;
  j["m"] = e.id.m;
  j["graph6"] = to_graph6(e.graph);
  j["canonical"] = canonical_form(e.graph).bytes;
  j["source"] = e.source;
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : e.graph.edges()) edges.push_back({u, v});
  j["edges"] = edges;
  if (!e.drawn.empty()) j["drawn"] = e.drawn;
  return j;
}

}  // namespace udg
