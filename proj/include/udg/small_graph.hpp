#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace udg {

inline constexpr int kMaxVertices = 16;

/// Neighbor set of one vertex, bit v set iff v is adjacent.
using Row = std::uint16_t;

using Edge = std::pair<int, int>;

template <typename Fn>
inline void for_each_bit(std::uint32_t bits, Fn&& fn) {
  while (bits != 0) {
    const int v = std::countr_zero(bits);
    fn(v);
    bits &= bits - 1;
  }
}

/// Simple undirected graph on at most 16 vertices stored as adjacency bit rows.
///
/// Values are immutable once built: every "modifier" returns a new graph.
class SmallGraph {
 public:
  SmallGraph() = default;

  explicit SmallGraph(int n) : n_(n) {
    if (n < 0 || n > kMaxVertices) {
      throw std::invalid_argument("SmallGraph: vertex count " + std::to_string(n) +
                                  " outside 0.." + std::to_string(kMaxVertices));
    }
  }

  static SmallGraph from_edges(int n, std::span<const Edge> edges) {
    SmallGraph g(n);
    for (const auto& [u, v] : edges) g.set_edge(u, v);
    return g;
  }

  static SmallGraph from_edges(int n, std::initializer_list<Edge> edges) {
    return from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
  }

  static SmallGraph from_rows(int n, std::span<const Row> rows) {
    SmallGraph g(n);
    for (int v = 0; v < n; ++v) {
      for_each_bit(rows[v], [&](int w) { g.set_edge(v, w); });
    }
    return g;
  }

  static SmallGraph complete(int n) {
    SmallGraph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) g.set_edge(u, v);
    return g;
  }

  static SmallGraph cycle(int n) {
    SmallGraph g(n);
    for (int v = 0; v < n; ++v) g.set_edge(v, (v + 1) % n);
    return g;
  }

  static SmallGraph path(int n) {
    SmallGraph g(n);
    for (int v = 0; v + 1 < n; ++v) g.set_edge(v, v + 1);
    return g;
  }

  static SmallGraph complete_bipartite(int a, int b) {
    SmallGraph g(a + b);
    for (int u = 0; u < a; ++u)
      for (int v = a; v < a + b; ++v) g.set_edge(u, v);
    return g;
  }

  int order() const { return n_; }

  int size() const {
    int twice = 0;
    for (int v = 0; v < n_; ++v) twice += std::popcount(adj_[v]);
    return twice / 2;
  }

  Row neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return std::popcount(adj_[v]); }
  bool has_edge(int u, int v) const { return ((adj_[u] >> v) & 1U) != 0; }
  Row vertex_mask() const { return static_cast<Row>((1U << n_) - 1U); }
  const std::array<Row, kMaxVertices>& rows() const { return adj_; }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (int u = 0; u < n_; ++u) {
      for_each_bit(adj_[u] & ~((2U << u) - 1U), [&](int v) { out.emplace_back(u, v); });
    }
    return out;
  }

  SmallGraph with_edge(int u, int v) const {
    SmallGraph g = *this;
    g.set_edge(u, v);
    return g;
  }

  SmallGraph without_edge(int u, int v) const {
    SmallGraph g = *this;
    g.adj_[u] &= static_cast<Row>(~(1U << v));
    g.adj_[v] &= static_cast<Row>(~(1U << u));
    return g;
  }

  /// Graph with one extra vertex (index order()) adjacent to `nbrs`.
  SmallGraph with_vertex(Row nbrs) const {
    SmallGraph g(n_ + 1);
    g.adj_ = adj_;
    for_each_bit(nbrs, [&](int w) { g.set_edge(n_, w); });
    return g;
  }

  /// perm[old] = new label.
  SmallGraph relabeled(std::span<const int> perm) const {
    SmallGraph g(n_);
    for (int u = 0; u < n_; ++u) {
      for_each_bit(adj_[u], [&](int v) {
        g.adj_[perm[u]] |= static_cast<Row>(1U << perm[v]);
      });
    }
    return g;
  }

  /// Subgraph induced by the vertices in `mask`, renumbered in increasing order.
  SmallGraph induced(Row mask) const {
    std::array<int, kMaxVertices> index{};
    int k = 0;
    for_each_bit(mask, [&](int v) { index[v] = k++; });
    SmallGraph g(k);
    for_each_bit(mask, [&](int u) {
      for_each_bit(adj_[u] & mask, [&](int v) {
        g.adj_[index[u]] |= static_cast<Row>(1U << index[v]);
      });
    });
    return g;
  }

  SmallGraph without_vertex(int v) const {
    return induced(static_cast<Row>(vertex_mask() & ~(1U << v)));
  }

  friend bool operator==(const SmallGraph& a, const SmallGraph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  void set_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) {
      throw std::invalid_argument("SmallGraph: invalid edge (" + std::to_string(u) + "," +
                                  std::to_string(v) + ") for n=" + std::to_string(n_));
    }
    adj_[u] |= static_cast<Row>(1U << v);
    adj_[v] |= static_cast<Row>(1U << u);
  }

  int n_ = 0;
  std::array<Row, kMaxVertices> adj_{};
};

/// Injective pattern-vertex -> host-vertex map.
struct SubgraphWitness {
  std::vector<int> mapping;
  friend bool operator==(const SubgraphWitness&, const SubgraphWitness&) = default;
};

// ---------------------------------------------------------------------------
// graph6

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

inline SmallGraph parse_graph6(std::string_view text) {
  constexpr std::string_view kHeader = ">>graph6<<";
  std::size_t base = 0;
  if (text.starts_with(kHeader)) {
    text.remove_prefix(kHeader.size());
    base = kHeader.size();
  }
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw ParseError("graph6: empty input", base);

  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c < 63 || c > 126) throw ParseError("graph6: byte outside 63..126", base + i);
  }
  const int first = static_cast<unsigned char>(text[0]) - 63;
  if (first == 63) throw ParseError("graph6: n > 62 not supported", base);
  if (first > kMaxVertices) {
    throw ParseError("graph6: n=" + std::to_string(first) + " exceeds " +
                         std::to_string(kMaxVertices),
                     base);
  }
  const int n = first;
  const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t need = (bits + 5) / 6;
  if (text.size() - 1 != need) {
    throw ParseError("graph6: expected " + std::to_string(need) + " payload bytes, got " +
                         std::to_string(text.size() - 1),
                     base + std::min(text.size(), need + 1));
  }
  SmallGraph g(n);
  std::vector<Edge> edges;
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const int byte = static_cast<unsigned char>(text[1 + k / 6]) - 63;
      if ((byte >> (5 - k % 6)) & 1) edges.emplace_back(i, j);
    }
  }
  // Padding bits must be zero.
  for (; k < need * 6; ++k) {
    const int byte = static_cast<unsigned char>(text[1 + k / 6]) - 63;
    if ((byte >> (5 - k % 6)) & 1) throw ParseError("graph6: nonzero padding bit", base + 1 + k / 6);
  }
  return SmallGraph::from_edges(n, edges);
}

inline std::string to_graph6(const SmallGraph& g) {
  const int n = g.order();
  std::string out(1, static_cast<char>(63 + n));
  int acc = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
  return out;
}

}  // namespace udg
