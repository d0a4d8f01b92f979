#pragma once

// Non-induced subgraph isomorphism (monomorphism) by bitset backtracking.
// Pattern edges must land on host edges; pattern non-edges are unconstrained.

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "udg/small_graph.hpp"

namespace udg {

template <std::size_t Words>
class FixedBitSet {
 public:
  static constexpr int kCapacity = static_cast<int>(Words * 64);

  void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return ((words_[i >> 6] >> (i & 63)) & 1U) != 0; }

  bool any() const {
    for (auto w : words_)
      if (w != 0) return true;
    return false;
  }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  FixedBitSet& operator&=(const FixedBitSet& o) {
    for (std::size_t i = 0; i < Words; ++i) words_[i] &= o.words_[i];
    return *this;
  }
  FixedBitSet& operator|=(const FixedBitSet& o) {
    for (std::size_t i = 0; i < Words; ++i) words_[i] |= o.words_[i];
    return *this;
  }
  FixedBitSet and_not(const FixedBitSet& o) const {
    FixedBitSet r = *this;
    for (std::size_t i = 0; i < Words; ++i) r.words_[i] &= ~o.words_[i];
    return r;
  }
  friend FixedBitSet operator&(FixedBitSet a, const FixedBitSet& b) { return a &= b; }

  /// Calls fn(i) for each set bit in increasing order; stops early if fn returns false.
  template <typename Fn>
  bool for_each(Fn&& fn) const {
    for (std::size_t k = 0; k < Words; ++k) {
      std::uint64_t w = words_[k];
      while (w != 0) {
        const int i = static_cast<int>(k * 64) + std::countr_zero(w);
        if (!fn(i)) return false;
        w &= w - 1;
      }
    }
    return true;
  }

  friend bool operator==(const FixedBitSet&, const FixedBitSet&) = default;

 private:
  std::array<std::uint64_t, Words> words_{};
};

/// Host graph for matching; Words * 64 bounds the vertex count.
template <std::size_t Words>
class HostGraph {
 public:
  using Set = FixedBitSet<Words>;

  explicit HostGraph(int n = 0) : n_(n), adj_(n), degree_(n, 0) {
    if (n > Set::kCapacity) throw std::invalid_argument("HostGraph: too many vertices");
  }

  static HostGraph from_small(const SmallGraph& g) {
    HostGraph h(g.order());
    for (const auto& [u, v] : g.edges()) h.add_edge(u, v);
    return h;
  }

  void add_edge(int u, int v) {
    if (u == v || adj_[u].test(v)) return;
    adj_[u].set(v);
    adj_[v].set(u);
    ++degree_[u];
    ++degree_[v];
  }

  int order() const { return n_; }
  const Set& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return degree_[v]; }
  bool has_edge(int u, int v) const { return adj_[u].test(v); }

  Set all() const {
    Set s;
    for (int v = 0; v < n_; ++v) s.set(v);
    return s;
  }

 private:
  int n_;
  std::vector<Set> adj_;
  std::vector<int> degree_;
};

using SmallHost = HostGraph<1>;
using WideHost = HostGraph<4>;

template <std::size_t Words>
class SubgraphMatcher {
 public:
  using Set = FixedBitSet<Words>;
  using Fixed = std::span<const std::pair<int, int>>;

  SubgraphMatcher(const SmallGraph& pattern, const HostGraph<Words>& host)
      : pattern_(pattern), host_(host) {}

  /// Visits every monomorphism extending `fixed` (pattern vertex -> host
  /// vertex pairs). `visit` returns false to stop. Returns false iff stopped.
  template <typename Visit>
  bool for_each(Visit&& visit, Fixed fixed = {}) const {
    const int pn = pattern_.order();
    if (pn > host_.order()) return true;
    State s;
    s.image.assign(pn, -1);
    s.order.clear();
    build_order(s, fixed);
    for (const auto& [p, h] : fixed) {
      if (p < 0 || p >= pn || h < 0 || h >= host_.order()) return true;
      if (s.used.test(h) || host_.degree(h) < pattern_.degree(p)) return true;
      for (int q = 0; q < pn; ++q) {
        if (s.image[q] >= 0 && pattern_.has_edge(p, q) && !host_.has_edge(h, s.image[q])) return true;
      }
      s.image[p] = h;
      s.used.set(h);
    }
    // Host vertices by minimum degree requirement.
    s.degree_ok.resize(pn);
    for (int p = 0; p < pn; ++p) {
      Set ok;
      for (int h = 0; h < host_.order(); ++h)
        if (host_.degree(h) >= pattern_.degree(p)) ok.set(h);
      s.degree_ok[p] = ok;
    }
    return extend(s, static_cast<int>(fixed.size()), visit);
  }

  std::optional<SubgraphWitness> first(Fixed fixed = {}) const {
    std::optional<SubgraphWitness> found;
    for_each(
        [&](std::span<const int> m) {
          found = SubgraphWitness{std::vector<int>(m.begin(), m.end())};
          return false;
        },
        fixed);
    return found;
  }

 private:
  struct State {
    std::vector<int> image;
    std::vector<int> order;
    Set used;
    std::vector<Set> degree_ok;
  };

  // Fixed vertices first, then the vertex with most already-ordered neighbors
  // (ties: higher degree, then lower index).
  void build_order(State& s, Fixed fixed) const {
    const int pn = pattern_.order();
    Row placed = 0;
    for (const auto& [p, h] : fixed) {
      (void)h;
      s.order.push_back(p);
      placed |= static_cast<Row>(1U << p);
    }
    while (static_cast<int>(s.order.size()) < pn) {
      int best = -1, best_links = -1, best_deg = -1;
      for (int p = 0; p < pn; ++p) {
        if (placed & (1U << p)) continue;
        const int links = std::popcount(static_cast<unsigned>(pattern_.neighbors(p) & placed));
        const int deg = pattern_.degree(p);
        if (links > best_links || (links == best_links && deg > best_deg)) {
          best = p;
          best_links = links;
          best_deg = deg;
        }
      }
      s.order.push_back(best);
      placed |= static_cast<Row>(1U << best);
    }
  }

  template <typename Visit>
  bool extend(State& s, int depth, Visit& visit) const {
    if (depth == static_cast<int>(s.order.size())) return visit(std::span<const int>(s.image));
    const int p = s.order[depth];
    Set cand = s.degree_ok[p].and_not(s.used);
    for_each_bit(pattern_.neighbors(p), [&](int q) {
      if (s.image[q] >= 0) cand &= host_.neighbors(s.image[q]);
    });
    return cand.for_each([&](int h) {
      s.image[p] = h;
      s.used.set(h);
      const bool go_on = extend(s, depth + 1, visit);
      s.used.reset(h);
      s.image[p] = -1;
      return go_on;
    });
  }

  const SmallGraph& pattern_;
  const HostGraph<Words>& host_;
};

/// Some injective map sending every pattern edge to a host edge, if any.
inline std::optional<SubgraphWitness> contains_subgraph(const SmallGraph& host, const SmallGraph& pattern) {
  if (pattern.order() > host.order() || pattern.size() > host.size()) return std::nullopt;
  const SmallHost h = SmallHost::from_small(host);
  return SubgraphMatcher<1>(pattern, h).first();
}

inline bool is_valid_witness(const SmallGraph& host, const SmallGraph& pattern, const SubgraphWitness& w) {
  if (static_cast<int>(w.mapping.size()) != pattern.order()) return false;
  Row seen = 0;
  for (int h : w.mapping) {
    if (h < 0 || h >= host.order() || (seen & (1U << h))) return false;
    seen |= static_cast<Row>(1U << h);
  }
  for (const auto& [u, v] : pattern.edges())
    if (!host.has_edge(w.mapping[u], w.mapping[v])) return false;
  return true;
}

}  // namespace udg
