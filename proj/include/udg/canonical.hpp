#pragma once

// Canonical labeling by partition refinement + individualization, with
// automorphism pruning. Sized for the small graphs used here (n <= 16).

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "udg/small_graph.hpp"

namespace udg {

using Perm = std::array<std::int8_t, kMaxVertices>;

struct Labeling {
  Perm lab{};                              // lab[v] = canonical position of v
  std::array<Row, kMaxVertices> rows{};    // adjacency of the canonically labeled graph
  Perm orbit{};                            // smallest vertex in v's automorphism orbit
  std::vector<Perm> generators;            // automorphisms found during the search

  SmallGraph graph(int n) const { return SmallGraph::from_rows(n, rows); }
};

struct CanonicalForm {
  std::string bytes;     // graph6 of the canonically labeled graph
  std::vector<int> perm;  // perm[v] = canonical label of v

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) { return a.bytes == b.bytes; }
};

namespace detail {

using Colors = std::array<std::uint8_t, kMaxVertices>;

// Replaces colors by the rank of each vertex's (color, neighbor-color-count)
// signature until the number of cells stops growing. Returns the cell count.
inline int refine(const SmallGraph& g, Colors& color, int cells) {
  const int n = g.order();
  for (;;) {
    std::array<std::uint64_t, kMaxVertices> counts{};
    for (int v = 0; v < n; ++v) {
      std::uint64_t packed = 0;
      for_each_bit(g.neighbors(v), [&](int w) { packed += std::uint64_t{1} << (4 * (15 - color[w])); });
      counts[v] = packed;
    }
    std::array<int, kMaxVertices> order{};
    std::iota(order.begin(), order.begin() + n, 0);
    auto key_less = [&](int a, int b) {
      if (color[a] != color[b]) return color[a] < color[b];
      return counts[a] > counts[b];
    };
    std::sort(order.begin(), order.begin() + n, key_less);
    Colors next{};
    int rank = 0;
    for (int i = 0; i < n; ++i) {
      if (i > 0 && key_less(order[i - 1], order[i])) ++rank;
      next[order[i]] = static_cast<std::uint8_t>(rank);
    }
    const int new_cells = n == 0 ? 0 : rank + 1;
    color = next;
    if (new_cells == cells) return cells;
    cells = new_cells;
  }
}

inline int normalize(Colors& color, int n) {
  std::array<int, kMaxVertices> order{};
  std::iota(order.begin(), order.begin() + n, 0);
  std::sort(order.begin(), order.begin() + n, [&](int a, int b) { return color[a] < color[b]; });
  Colors next{};
  int rank = 0;
  for (int i = 0; i < n; ++i) {
    if (i > 0 && color[order[i - 1]] != color[order[i]]) ++rank;
    next[order[i]] = static_cast<std::uint8_t>(rank);
  }
  color = next;
  return n == 0 ? 0 : rank + 1;
}

struct UnionFind {
  std::array<std::int8_t, kMaxVertices> parent{};
  explicit UnionFind(int n) {
    for (int i = 0; i < n; ++i) parent[i] = static_cast<std::int8_t>(i);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent[b] = static_cast<std::int8_t>(a);
    else parent[a] = static_cast<std::int8_t>(b);
  }
};

class CanonSearch {
 public:
  explicit CanonSearch(const SmallGraph& g) : g_(g), n_(g.order()) {}

  Labeling run(const Colors& initial) {
    Colors color = initial;
    int cells = normalize(color, n_);
    cells = refine(g_, color, cells);
    std::array<int, kMaxVertices> prefix{};
    search(color, cells, prefix, 0);

    Labeling out;
    out.lab = best_lab_;
    out.rows = best_rows_;
    UnionFind uf(n_);
    for (const auto& gamma : autos_)
      for (int v = 0; v < n_; ++v) uf.unite(v, gamma[v]);
    for (int v = 0; v < n_; ++v) out.orbit[v] = static_cast<std::int8_t>(uf.find(v));
    out.generators = std::move(autos_);
    return out;
  }

 private:
  using Rows = std::array<Row, kMaxVertices>;

  void search(const Colors& color, int cells, std::array<int, kMaxVertices>& prefix, int depth) {
    if (cells == n_) {
      leaf(color);
      return;
    }
    // Target cell: the first non-singleton cell of smallest size.
    std::array<int, kMaxVertices> size{};
    for (int v = 0; v < n_; ++v) ++size[color[v]];
    int target = -1;
    for (int c = 0; c < cells; ++c) {
      if (size[c] > 1 && (target < 0 || size[c] < size[target])) target = c;
    }
    Row members = 0;
    for (int v = 0; v < n_; ++v)
      if (color[v] == target) members |= static_cast<Row>(1U << v);

    Row explored = 0;
    for_each_bit(members, [&](int w) {
      if (explored != 0 && equivalent_to_explored(w, explored, prefix, depth)) return;
      explored |= static_cast<Row>(1U << w);
      Colors child{};
      for (int v = 0; v < n_; ++v) child[v] = static_cast<std::uint8_t>(2 * color[v] + 1);
      child[w] = static_cast<std::uint8_t>(2 * color[w]);
      int child_cells = normalize(child, n_);
      child_cells = refine(g_, child, child_cells);
      prefix[depth] = w;
      search(child, child_cells, prefix, depth + 1);
    });
  }

  bool equivalent_to_explored(int w, Row explored, const std::array<int, kMaxVertices>& prefix,
                              int depth) const {
    UnionFind uf(n_);
    bool any = false;
    for (const auto& gamma : autos_) {
      bool fixes = true;
      for (int i = 0; i < depth && fixes; ++i) fixes = gamma[prefix[i]] == prefix[i];
      if (!fixes) continue;
      any = true;
      for (int v = 0; v < n_; ++v) uf.unite(v, gamma[v]);
    }
    if (!any) return false;
    const int root = uf.find(w);
    bool hit = false;
    for_each_bit(explored, [&](int e) { hit = hit || uf.find(e) == root; });
    return hit;
  }

  void leaf(const Colors& color) {
    Rows rows{};
    for (int u = 0; u < n_; ++u) {
      for_each_bit(g_.neighbors(u), [&](int v) { rows[color[u]] |= static_cast<Row>(1U << color[v]); });
    }
    Perm lab{};
    for (int v = 0; v < n_; ++v) lab[v] = static_cast<std::int8_t>(color[v]);
    if (!have_leaf_) {
      have_leaf_ = true;
      first_lab_ = best_lab_ = lab;
      first_rows_ = best_rows_ = rows;
      return;
    }
    if (rows == first_rows_) {
      record_automorphism(first_lab_, lab);
      return;
    }
    if (rows == best_rows_) {
      record_automorphism(best_lab_, lab);
      return;
    }
    if (std::lexicographical_compare(best_rows_.begin(), best_rows_.begin() + n_, rows.begin(),
                                      rows.begin() + n_)) {
      best_rows_ = rows;
      best_lab_ = lab;
    }
  }

  // Leaves a and b give the same graph, so a^-1 . b is an automorphism.
  void record_automorphism(const Perm& a, const Perm& b) {
    Perm inv{};
    for (int v = 0; v < n_; ++v) inv[a[v]] = static_cast<std::int8_t>(v);
    Perm gamma{};
    for (int v = 0; v < n_; ++v) gamma[v] = inv[b[v]];
    autos_.push_back(gamma);
  }

  const SmallGraph& g_;
  int n_;
  bool have_leaf_ = false;
  Perm first_lab_{}, best_lab_{};
  Rows first_rows_{}, best_rows_{};
  std::vector<Perm> autos_;
};

}  // namespace detail

/// Canonical labeling of `g`; `colors` (optional, one per vertex) fixes an
/// ordered initial partition that labelings must respect.
inline Labeling canonical_labeling(const SmallGraph& g, std::span<const int> colors = {}) {
  detail::Colors initial{};
  if (!colors.empty()) {
    for (int v = 0; v < g.order(); ++v) initial[v] = static_cast<std::uint8_t>(colors[v]);
  }
  return detail::CanonSearch(g).run(initial);
}

inline CanonicalForm canonical_form(const SmallGraph& g) {
  const Labeling l = canonical_labeling(g);
  CanonicalForm out;
  out.bytes = to_graph6(l.graph(g.order()));
  out.perm.assign(l.lab.begin(), l.lab.begin() + g.order());
  return out;
}

inline bool isomorphic(const SmallGraph& a, const SmallGraph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  return canonical_labeling(a).rows == canonical_labeling(b).rows;
}

}  // namespace udg
