#pragma once

#include <algorithm>
#include <vector>

#include "udg/small_graph.hpp"

namespace udg {

/// Vertices reachable from `start` inside `allowed`.
inline Row reachable(const SmallGraph& g, int start, Row allowed) {
  Row seen = static_cast<Row>(1U << start);
  Row frontier = seen;
  while (frontier != 0) {
    Row next = 0;
    for_each_bit(frontier, [&](int v) { next |= g.neighbors(v); });
    next &= allowed & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

inline bool is_connected(const SmallGraph& g) {
  if (g.order() == 0) return true;
  return reachable(g, 0, g.vertex_mask()) == g.vertex_mask();
}

/// v is a cut vertex iff its neighbors fall apart once v is removed.
inline bool is_cut_vertex(const SmallGraph& g, int v) {
  const Row nbrs = g.neighbors(v);
  if (nbrs == 0) return false;
  const Row rest = static_cast<Row>(g.vertex_mask() & ~(1U << v));
  const int start = std::countr_zero(static_cast<unsigned>(nbrs));
  return (reachable(g, start, rest) & nbrs) != nbrs;
}

inline Row cut_vertices(const SmallGraph& g) {
  Row out = 0;
  for (int v = 0; v < g.order(); ++v)
    if (is_cut_vertex(g, v)) out |= static_cast<Row>(1U << v);
  return out;
}

/// Connected with no cut vertex; a single edge (K2) counts, K1 does not.
inline bool is_biconnected(const SmallGraph& g) {
  if (g.order() < 2) return false;
  return is_connected(g) && cut_vertices(g) == 0;
}

struct Block {
  SmallGraph graph;          // block relabeled onto 0..k-1
  std::vector<int> vertices;  // vertices[i] = original label of block vertex i
};

/// Block decomposition (Hopcroft–Tarjan). Every edge lands in exactly one
/// block; isolated vertices come out as one-vertex blocks.
inline std::vector<Block> biconnected_components(const SmallGraph& g) {
  const int n = g.order();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<Edge> stack;
  std::vector<Block> blocks;
  int time = 0;

  auto emit = [&](const Edge& until) {
    Row mask = 0;
    std::vector<Edge> edges;
    for (;;) {
      const Edge e = stack.back();
      stack.pop_back();
      edges.push_back(e);
      mask |= static_cast<Row>((1U << e.first) | (1U << e.second));
      if (e == until) break;
    }
    Block b;
    for_each_bit(mask, [&](int v) { b.vertices.push_back(v); });
    std::vector<Edge> local;
    for (const auto& [u, v] : edges) {
      const int a = static_cast<int>(std::find(b.vertices.begin(), b.vertices.end(), u) - b.vertices.begin());
      const int c = static_cast<int>(std::find(b.vertices.begin(), b.vertices.end(), v) - b.vertices.begin());
      local.emplace_back(a, c);
    }
    b.graph = SmallGraph::from_edges(static_cast<int>(b.vertices.size()), local);
    blocks.push_back(std::move(b));
  };

  auto dfs = [&](auto&& self, int u, int parent) -> void {
    disc[u] = low[u] = time++;
    for_each_bit(g.neighbors(u), [&](int v) {
      if (disc[v] < 0) {
        stack.emplace_back(u, v);
        self(self, v, u);
        low[u] = std::min(low[u], low[v]);
        if (low[v] >= disc[u]) emit(Edge{u, v});
      } else if (v != parent && disc[v] < disc[u]) {
        stack.emplace_back(u, v);
        low[u] = std::min(low[u], disc[v]);
      }
    });
  };

  for (int v = 0; v < n; ++v) {
    if (disc[v] >= 0) continue;
    if (g.degree(v) == 0) {
      disc[v] = time++;
      blocks.push_back(Block{SmallGraph(1), {v}});
      continue;
    }
    dfs(dfs, v, -1);
  }
  return blocks;
}

}  // namespace udg
