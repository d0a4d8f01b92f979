#pragma once

// Numerical unit-distance embeddings and combinatorial embedding into fixed
// witness point sets.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "udg/small_graph.hpp"
#include "udg/subgraph.hpp"

namespace udg {

inline constexpr double kSeparation = 1e-7;
inline constexpr double kResidualTolerance = 1e-9;
// The solver only accepts embeddings whose points are this far apart.
// Near-collapsed configurations reach tiny residuals on graphs that have no
// embedding at all, so distinctness at kSeparation alone is not evidence.
inline constexpr double kSolverSeparation = 1e-3;

struct Vec2 {
  double x = 0;
  double y = 0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double dist(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// max over edges of ||p_u - p_v| - 1|.
inline double edge_residual(const SmallGraph& g, const std::vector<Vec2>& p) {
  double r = 0;
  for (const auto& [u, v] : g.edges()) r = std::max(r, std::abs(dist(p[u], p[v]) - 1.0));
  return r;
}

inline double min_separation(const std::vector<Vec2>& p) {
  double s = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) s = std::min(s, dist(p[i], p[j]));
  return s;
}

struct Embedding {
  std::vector<Vec2> coords;
  double residual = 0;
  bool distinct_ok = false;
};

inline Embedding make_embedding(const SmallGraph& g, std::vector<Vec2> coords) {
  Embedding e;
  e.residual = edge_residual(g, coords);
  e.distinct_ok = min_separation(coords) >= kSeparation;
  e.coords = std::move(coords);
  return e;
}

struct SolveReport {
  std::optional<Embedding> embedding;
  double best_residual = std::numeric_limits<double>::infinity();
  int attempts = 0;
};

namespace detail {

// Levenberg-Marquardt on r_e = |p_u - p_v|^2 - 1 over the edges. With a
// positive `radius`, non-adjacent pairs closer than it get the extra residual
// radius^2 - |p_u - p_v|^2. Embeddings that keep non-adjacent pairs that far
// apart are still exact zeros, while the collapsed configurations that
// otherwise attract most starts are not.
// Vertex 0 is pinned at the origin and vertex 1 keeps y = 0; the unknowns
// are x1, then (x_v, y_v) for v >= 2.
class UnitDistanceLM {
 public:
  explicit UnitDistanceLM(const SmallGraph& g) : g_(g), edges_(g.edges()), n_(g.order()) {
    unknowns_ = n_ >= 2 ? 1 + 2 * (n_ - 2) : 0;
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        if (!g.has_edge(u, v)) others_.emplace_back(u, v);
  }

  std::vector<Vec2> run(std::vector<Vec2> p, int max_iterations, double radius = 0) const {
    if (unknowns_ == 0) return p;
    const int m = static_cast<int>(edges_.size() + (radius > 0 ? others_.size() : 0));
    if (m == 0) return p;
    Eigen::VectorXd r(m), r_try(m);
    Eigen::MatrixXd J(m, unknowns_);
    double lambda = 1e-3;
    residuals(p, radius, r);
    double cost = r.squaredNorm();
    for (int it = 0; it < max_iterations; ++it) {
      if (cost < 1e-30) break;
      jacobian(p, radius, J);
      const Eigen::MatrixXd JtJ = J.transpose() * J;
      const Eigen::VectorXd g = J.transpose() * r;
      bool improved = false;
      for (int tries = 0; tries < 12 && !improved; ++tries) {
        Eigen::MatrixXd A = JtJ;
        A.diagonal().array() += lambda * (1.0 + JtJ.diagonal().array());
        const Eigen::VectorXd step = A.ldlt().solve(-g);
        std::vector<Vec2> q = p;
        apply(q, step);
        residuals(q, radius, r_try);
        const double c = r_try.squaredNorm();
        if (c < cost) {
          p = std::move(q);
          r = r_try;
          cost = c;
          lambda = std::max(lambda / 3, 1e-15);
          improved = true;
        } else {
          lambda *= 4;
        }
      }
      if (!improved) break;
    }
    return p;
  }

 private:
  void residuals(const std::vector<Vec2>& p, double radius, Eigen::VectorXd& r) const {
    Eigen::Index k = 0;
    for (const auto& [u, v] : edges_) {
      const Vec2 d = p[u] - p[v];
      r[k++] = d.x * d.x + d.y * d.y - 1.0;
    }
    if (radius == 0) return;
    for (const auto& [u, v] : others_) {
      const Vec2 d = p[u] - p[v];
      const double gap = radius * radius - (d.x * d.x + d.y * d.y);
      r[k++] = gap > 0 ? gap : 0.0;
    }
  }

  // Column of coordinate (v, axis), or -1 if pinned.
  int column(int v, int axis) const {
    if (v == 0) return -1;
    if (v == 1) return axis == 0 ? 0 : -1;
    return 1 + 2 * (v - 2) + axis;
  }

  void add_row(Eigen::MatrixXd& J, Eigen::Index row, int u, int v, Vec2 d, double scale) const {
    const double grad[2] = {2 * scale * d.x, 2 * scale * d.y};
    for (int axis = 0; axis < 2; ++axis) {
      if (int c = column(u, axis); c >= 0) J(row, c) += grad[axis];
      if (int c = column(v, axis); c >= 0) J(row, c) -= grad[axis];
    }
  }

  void jacobian(const std::vector<Vec2>& p, double radius, Eigen::MatrixXd& J) const {
    J.setZero();
    Eigen::Index k = 0;
    for (const auto& [u, v] : edges_) add_row(J, k++, u, v, p[u] - p[v], 1.0);
    if (radius == 0) return;
    for (const auto& [u, v] : others_) {
      const Vec2 d = p[u] - p[v];
      if (d.x * d.x + d.y * d.y < radius * radius) add_row(J, k, u, v, d, -1.0);
      ++k;
    }
  }

  void apply(std::vector<Vec2>& p, const Eigen::VectorXd& step) const {
    if (n_ >= 2) p[1].x += step[0];
    for (int v = 2; v < n_; ++v) {
      p[v].x += step[1 + 2 * (v - 2)];
      p[v].y += step[2 + 2 * (v - 2)];
    }
  }

  const SmallGraph& g_;
  std::vector<Edge> edges_;
  std::vector<Edge> others_;
  int n_;
  int unknowns_ = 0;
};

}  // namespace detail

/// Intersection of the unit circles around c1 and c2, sorted by (x, y).
inline std::vector<Vec2> circle_intersect(Vec2 c1, Vec2 c2) {
  const double d = dist(c1, c2);
  if (d == 0 || d > 2.0 + 1e-12) return {};
  const Vec2 mid = 0.5 * (c1 + c2);
  const double h2 = 1.0 - d * d / 4.0;
  if (h2 <= 1e-24) return {mid};
  const double h = std::sqrt(h2);
  const Vec2 perp{-(c2.y - c1.y) / d, (c2.x - c1.x) / d};
  std::vector<Vec2> out{mid + h * perp, mid - h * perp};
  std::sort(out.begin(), out.end(), [](Vec2 a, Vec2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  return out;
}

namespace detail {

// Places vertices one at a time, most-constrained first, on the circle
// intersections of two placed neighbours when they meet. Then moves vertex 0
// to the origin and vertex 1 onto the x-axis.
inline std::vector<Vec2> constructive_start(const SmallGraph& g, std::mt19937_64& rng) {
  const int n = g.order();
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::vector<Vec2> p(n);
  std::vector<bool> placed(n, false);
  for (int step = 0; step < n; ++step) {
    int best = -1, best_count = -1;
    for (int v = 0; v < n; ++v) {
      if (placed[v]) continue;
      int c = 0;
      for (int u = 0; u < n; ++u) c += placed[u] && g.has_edge(u, v);
      if (c > best_count || (c == best_count && rng() % 2 == 0)) best = v, best_count = c;
    }
    std::vector<int> nb;
    for (int u = 0; u < n; ++u)
      if (placed[u] && g.has_edge(u, best)) nb.push_back(u);
    std::shuffle(nb.begin(), nb.end(), rng);
    Vec2 q{coord(rng), coord(rng)};
    if (!nb.empty()) {
      const double t = angle(rng);
      q = p[nb[0]] + Vec2{std::cos(t), std::sin(t)};
    }
    if (nb.size() >= 2) {
      auto cand = circle_intersect(p[nb[0]], p[nb[1]]);
      // Prefer intersections that do not land on a placed point.
      std::vector<Vec2> clear;
      for (Vec2 c : cand) {
        bool ok = true;
        for (int u = 0; u < n; ++u) ok = ok && !(placed[u] && dist(p[u], c) < kSolverSeparation);
        if (ok) clear.push_back(c);
      }
      if (!clear.empty()) cand = std::move(clear);
      if (!cand.empty()) q = cand[rng() % cand.size()];
    }
    p[best] = q;
    placed[best] = true;
  }
  const Vec2 o = p[0];
  for (auto& v : p) v = v - o;
  if (n >= 2 && dist(p[1], Vec2{}) > 0) {
    const double t = -std::atan2(p[1].y, p[1].x);
    for (auto& v : p) v = {std::cos(t) * v.x - std::sin(t) * v.y, std::sin(t) * v.x + std::cos(t) * v.y};
    p[1].y = 0;
  }
  return p;
}

}  // namespace detail

/// Restarted Levenberg-Marquardt. Even attempts start from a constructive
/// placement, odd ones from uniform random points in [-2, 2]^2.
/// Deterministic for a fixed seed. Failure is evidence, never proof.
inline SolveReport solve_numeric_report(const SmallGraph& g, std::uint64_t seed = 1, int budget = 200) {
  SolveReport rep;
  const int n = g.order();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  const detail::UnitDistanceLM lm(g);
  for (int attempt = 0; attempt < budget; ++attempt) {
    std::vector<Vec2> p(n);
    if (attempt % 2 == 0) {
      p = detail::constructive_start(g, rng);
    } else {
      for (int v = 0; v < n; ++v) p[v] = {coord(rng), coord(rng)};
      if (n >= 1) p[0] = {0, 0};
      if (n >= 2) p[1].y = 0;
    }
    // Cycle the exclusion radius so graphs whose embeddings need close
    // non-adjacent points are still reachable.
    constexpr double kRadii[] = {0.5, 0.5, 0.25, 0.25, 0.1, 0.1, 0.0, 0.0};
    const double radius = kRadii[attempt % 8];
    if (radius > 0) p = lm.run(std::move(p), 500, radius);
    p = lm.run(std::move(p), 1000);
    ++rep.attempts;
    Embedding e = make_embedding(g, std::move(p));
    const bool separated = min_separation(e.coords) >= kSolverSeparation;
    if (separated) rep.best_residual = std::min(rep.best_residual, e.residual);
    if (e.residual < kResidualTolerance && separated) {
      rep.embedding = std::move(e);
      return rep;
    }
  }
  return rep;
}

inline std::optional<Embedding> solve_numeric(const SmallGraph& g, std::uint64_t seed = 1, int budget = 200) {
  return solve_numeric_report(g, seed, budget).embedding;
}

/// Embedded unit-distance graph: points plus the pairs known to be at
/// distance exactly 1 (certified for table data, numeric for grown points).
struct PointSet {
  std::string name;
  std::vector<std::string> ids;
  std::vector<Vec2> coords;
  std::vector<Edge> unit_pairs;
  std::vector<std::string> provenance;

  int size() const { return static_cast<int>(coords.size()); }

  WideHost host() const {
    WideHost h(size());
    for (const auto& [u, v] : unit_pairs) h.add_edge(u, v);
    return h;
  }
};

/// Injective vertex -> point map sending edges to unit pairs (exhaustive).
inline std::optional<SubgraphWitness> embed_into(const SmallGraph& g, const WideHost& host) {
  if (g.order() > host.order()) return std::nullopt;
  return SubgraphMatcher<4>(g, host).first();
}

inline std::optional<SubgraphWitness> embed_into(const SmallGraph& g, const PointSet& ps) {
  return embed_into(g, ps.host());
}

struct Extension {
  Vec2 point;
  int parent_a = -1;
  int parent_b = -1;
};

namespace detail {

inline bool far_from_all(const PointSet& ps, Vec2 p) {
  return std::all_of(ps.coords.begin(), ps.coords.end(), [&](Vec2 q) { return dist(p, q) >= kSeparation; });
}

}  // namespace detail

/// Adds one point on the unit circles of two host points so that g embeds:
/// g - v must embed into the host for some degree-2 vertex v.
inline std::optional<Extension> extend_witness(const PointSet& ps, const SmallGraph& g) {
  const WideHost host = ps.host();
  for (int v = 0; v < g.order(); ++v) {
    if (g.degree(v) != 2) continue;
    const Row nb = g.neighbors(v);
    const int a = std::countr_zero(static_cast<unsigned>(nb));
    const int b = 31 - std::countl_zero(static_cast<unsigned>(nb));
    const SmallGraph rest = g.without_vertex(v);
    // Indices shift down by one above v.
    const int ra = a > v ? a - 1 : a;
    const int rb = b > v ? b - 1 : b;
    std::optional<Extension> found;
    SubgraphMatcher<4>(rest, host).for_each([&](std::span<const int> img) {
      for (Vec2 c : circle_intersect(ps.coords[img[ra]], ps.coords[img[rb]])) {
        if (detail::far_from_all(ps, c)) {
          found = Extension{c, img[ra], img[rb]};
          return false;
        }
      }
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

/// Returns ps plus the new point; unit pairs gain the two parents and any
/// other point at numeric distance 1.
inline PointSet with_point(const PointSet& ps, Vec2 p, const std::string& note) {
  PointSet out = ps;
  const int k = out.size();
  for (int i = 0; i < k; ++i)
    if (std::abs(dist(out.coords[i], p) - 1.0) < kResidualTolerance) out.unit_pairs.emplace_back(i, k);
  out.coords.push_back(p);
  out.ids.push_back(out.name + "_" + std::to_string(k));
  out.provenance.push_back(note);
  return out;
}

/// Unit hexagon around the origin together with its copy rotated by
/// arccos(5/6), the angle that closes a Moser spindle.
inline PointSet seed_core() {
  std::vector<Vec2> pts{{0, 0}};
  for (int k = 0; k < 6; ++k) pts.push_back({std::cos(k * std::numbers::pi / 3), std::sin(k * std::numbers::pi / 3)});
  const double t = std::acos(5.0 / 6.0);
  for (int k = 1; k <= 6; ++k) {
    const Vec2 p = pts[k];
    pts.push_back({std::cos(t) * p.x - std::sin(t) * p.y, std::sin(t) * p.x + std::cos(t) * p.y});
  }
  PointSet ps;
  ps.name = "core";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ps.ids.push_back("core_" + std::to_string(i));
    ps.provenance.push_back("seed");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(dist(pts[i], pts[j]) - 1.0) < kResidualTolerance)
        ps.unit_pairs.emplace_back(static_cast<int>(j), static_cast<int>(i));
  }
  ps.coords = std::move(pts);
  return ps;
}

struct GrowthReport {
  PointSet witness;
  int added_points = 0;
  int covered = 0;
  std::vector<SmallGraph> uncovered;
};

/// Grows `base` over the corpus by degree-2 extensions, sweeping repeatedly
/// until a sweep adds nothing. Order-dependent but deterministic.
inline GrowthReport grow_witness(const PointSet& base, const std::vector<SmallGraph>& corpus) {
  GrowthReport rep;
  rep.witness = base;
  std::vector<bool> done(corpus.size(), false);
  for (bool progress = true; progress;) {
    progress = false;
    WideHost host = rep.witness.host();
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (done[i]) continue;
      if (embed_into(corpus[i], host)) {
        done[i] = true;
        continue;
      }
      if (auto ext = extend_witness(rep.witness, corpus[i])) {
        rep.witness = with_point(rep.witness, ext->point,
                                 "circle(" + std::to_string(ext->parent_a) + "," + std::to_string(ext->parent_b) + ")");
        ++rep.added_points;
        host = rep.witness.host();
        done[i] = true;
        progress = true;
      }
    }
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (done[i]) ++rep.covered;
    else rep.uncovered.push_back(corpus[i]);
  }
  return rep;
}

inline nlohmann::json to_json(const SmallGraph& g, const Embedding& e) {
  nlohmann::json coords = nlohmann::json::array();
  for (const auto& p : e.coords) coords.push_back({p.x, p.y});
  return {{"graph6", to_graph6(g)}, {"coords", coords}, {"residual", e.residual}, {"distinct_ok", e.distinct_ok}};
}

}  // namespace udg
