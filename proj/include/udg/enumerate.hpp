#pragma once

// Isomorph-free generation of small graphs by canonical augmentation: a child
// G = P + v is kept iff v's neighbor set is the smallest in its Aut(P) orbit
// and v lies in the Aut(G) orbit of G's canonical deletion vertex.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "udg/canonical.hpp"
#include "udg/connectivity.hpp"
#include "udg/small_graph.hpp"

namespace udg {

enum class Filter { all, connected, biconnected };

inline std::string_view to_string(Filter f) {
  switch (f) {
    case Filter::all: return "all";
    case Filter::connected: return "connected";
    case Filter::biconnected: return "biconnected";
  }
  return "?";
}

inline Filter parse_filter(std::string_view s) {
  if (s == "all") return Filter::all;
  if (s == "connected") return Filter::connected;
  if (s == "biconnected") return Filter::biconnected;
  throw std::invalid_argument("unknown filter '" + std::string(s) + "' (all|connected|biconnected)");
}

inline bool satisfies(const SmallGraph& g, Filter f) {
  switch (f) {
    case Filter::all: return true;
    case Filter::connected: return is_connected(g);
    case Filter::biconnected: return is_biconnected(g);
  }
  return false;
}

namespace detail {

// Is `set` the smallest member of its orbit under the group generated by `gens`?
inline bool is_orbit_minimum(Row set, const std::vector<Perm>& gens) {
  if (gens.empty()) return true;
  auto apply = [&](const Perm& p, Row s) {
    Row out = 0;
    for_each_bit(s, [&](int v) { out |= static_cast<Row>(1U << p[v]); });
    return out;
  };
  // Orbits of subsets are tiny at this scale; a visited list is enough.
  std::vector<Row> seen{set};
  for (std::size_t i = 0; i < seen.size(); ++i) {
    for (const auto& g : gens) {
      const Row img = apply(g, seen[i]);
      if (img < set) return false;
      if (std::find(seen.begin(), seen.end(), img) == seen.end()) seen.push_back(img);
    }
  }
  return true;
}

struct VertexKey {
  int degree;
  int neighbor_degree_sum;
  friend auto operator<=>(const VertexKey&, const VertexKey&) = default;
};

/// Canonical-deletion test for child `g` whose newest vertex is `v`.
/// `eligible` holds the vertices whose deletion keeps the parent family.
inline bool is_canonical_child(const SmallGraph& g, int v, Row eligible) {
  if (!(eligible & (1U << v))) return false;
  std::array<VertexKey, kMaxVertices> key{};
  VertexKey best{-1, -1};
  for_each_bit(eligible, [&](int u) {
    int s = 0;
    for_each_bit(g.neighbors(u), [&](int w) { s += g.degree(w); });
    key[u] = VertexKey{g.degree(u), s};
    best = std::max(best, key[u]);
  });
  if (key[v] != best) return false;
  Row top = 0;
  for_each_bit(eligible, [&](int u) {
    if (key[u] == best) top |= static_cast<Row>(1U << u);
  });
  if (top == static_cast<Row>(1U << v)) return true;

  const Labeling lab = canonical_labeling(g);
  int m = -1;
  for_each_bit(top, [&](int u) {
    if (m < 0 || lab.lab[u] > lab.lab[m]) m = u;
  });
  return lab.orbit[v] == lab.orbit[m];
}

// Calls emit(child) for each accepted child of `parent`.
template <typename Emit>
void augment(const SmallGraph& parent, bool connected_family, Filter final_filter, bool final_level,
             Emit&& emit) {
  const int pn = parent.order();
  const int n = pn + 1;
  const Labeling plab = canonical_labeling(parent);
  const std::uint32_t limit = 1U << pn;
  for (std::uint32_t s = connected_family ? 1 : 0; s < limit; ++s) {
    const Row nbrs = static_cast<Row>(s);
    if (final_level && final_filter == Filter::biconnected && n > 2 && std::popcount(s) < 2) continue;
    if (!is_orbit_minimum(nbrs, plab.generators)) continue;
    const SmallGraph child = parent.with_vertex(nbrs);
    if (final_level && final_filter == Filter::biconnected && !is_biconnected(child)) continue;
    const Row all = child.vertex_mask();
    const Row eligible = connected_family ? static_cast<Row>(all & ~cut_vertices(child)) : all;
    if (!is_canonical_child(child, n - 1, eligible)) continue;
    emit(child);
  }
}

}  // namespace detail

/// One representative per isomorphism class on n vertices satisfying `filter`.
/// Output order is deterministic (parent order, then neighbor-set order) for
/// any thread count.
inline std::vector<SmallGraph> generate(int n, Filter filter, int threads = 1) {
  if (n < 1) throw std::invalid_argument("generate: n must be >= 1");
  if (n > kMaxVertices) throw std::invalid_argument("generate: n exceeds vertex cap");
  const bool connected_family = filter != Filter::all;
  if (n == 1) {
    if (filter == Filter::biconnected) return {};
    return {SmallGraph(1)};
  }
  std::vector<SmallGraph> level{SmallGraph(1)};
  for (int k = 2; k < n; ++k) {
    std::vector<SmallGraph> next;
    for (const auto& p : level)
      detail::augment(p, connected_family, filter, false, [&](const SmallGraph& c) { next.push_back(c); });
    level = std::move(next);
  }
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(level.size())));
  std::vector<std::vector<SmallGraph>> per_parent(level.size());
  std::atomic<std::size_t> cursor{0};
  auto work = [&] {
    for (std::size_t i = cursor++; i < level.size(); i = cursor++) {
      detail::augment(level[i], connected_family, filter, true,
                      [&](const SmallGraph& c) { per_parent[i].push_back(c); });
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  std::vector<SmallGraph> out;
  for (auto& chunk : per_parent) out.insert(out.end(), chunk.begin(), chunk.end());
  return out;
}

inline std::uint64_t count(int n, Filter filter, int threads = 1) {
  return generate(n, filter, threads).size();
}

}  // namespace udg
