#pragma once

// Verification of coordinate tables. Radical points are checked exactly;
// points given by a minimal polynomial of z = x + iy are pinned down by a
// Krawczyk-certified box and compared with asymmetric interval thresholds.

#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "udg/ball.hpp"
#include "udg/embed.hpp"
#include "udg/radical.hpp"
#include "udg/small_graph.hpp"

namespace udg {

inline constexpr double kUnitMargin = 1e-40;
inline constexpr double kNonUnitMargin = 1e-6;
inline constexpr double kDuplicateDistance = 1e-6;
inline constexpr int kMaxPrecisionBits = 1024;

class CertifyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RadicalPoint {
  RadicalValue x;
  RadicalValue y;
};

/// Root of `minpoly` (integer coefficients, highest degree first) near
/// approx = (x, y) as printed with `digits` decimals, shifted by `offset`.
struct AlgebraicPoint {
  std::vector<mpz_class> minpoly;
  std::array<std::string, 2> approx;
  int digits = 5;
  std::array<RadicalValue, 2> offset;
};

struct TablePoint {
  std::string id;
  std::variant<RadicalPoint, AlgebraicPoint> value;

  bool is_radical() const { return std::holds_alternative<RadicalPoint>(value); }
};

struct CoordinateTable {
  std::string name;
  std::vector<TablePoint> points;
  std::vector<Edge> edges;  // declared edges, indices into points
  int base_size = 0;        // points inherited through "extends"
};

/// Exact decimal string to rational.
inline mpq_class parse_decimal(const std::string& s) {
  std::size_t k = 0;
  bool neg = false;
  if (k < s.size() && (s[k] == '-' || s[k] == '+')) neg = s[k++] == '-';
  std::string digits;
  std::size_t frac = 0;
  bool dot = false;
  for (; k < s.size(); ++k) {
    if (s[k] == '.' && !dot) {
      dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[k]))) {
      digits += s[k];
      if (dot) ++frac;
    } else {
      throw CertifyError("malformed decimal '" + s + "'");
    }
  }
  if (digits.empty()) throw CertifyError("malformed decimal '" + s + "'");
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
  mpq_class q(mpz_class(digits, 10), den);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

namespace detail {

inline TablePoint point_from_json(const nlohmann::json& j) {
  TablePoint p;
  p.id = j.at("id").get<std::string>();
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "radical") {
      p.value = RadicalPoint{parse_radical(j.at("expr").at(0).get<std::string>()),
                             parse_radical(j.at("expr").at(1).get<std::string>())};
    } else if (kind == "algebraic") {
      AlgebraicPoint a;
      for (const auto& c : j.at("minpoly"))
        a.minpoly.emplace_back(c.is_string() ? c.get<std::string>() : std::to_string(c.get<long long>()));
      if (a.minpoly.size() < 2 || a.minpoly.front() == 0) throw CertifyError("minpoly must have positive degree");
      a.approx[0] = j.at("approx").at(0).get<std::string>();
      a.approx[1] = j.at("approx").at(1).get<std::string>();
      a.digits = j.value("digits", 5);
      if (j.contains("offset")) {
        a.offset[0] = parse_radical(j["offset"].at(0).get<std::string>());
        a.offset[1] = parse_radical(j["offset"].at(1).get<std::string>());
      }
      p.value.emplace<AlgebraicPoint>(std::move(a));
    } else {
      throw CertifyError("unknown kind '" + kind + "'");
    }
  } catch (const std::exception& e) {
    throw CertifyError(p.id + ": " + e.what());
  }
  return p;
}

}  // namespace detail

/// Loads a coordinate table; "extends" names a base table in the same directory.
inline CoordinateTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CertifyError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    throw CertifyError(path.string() + ": " + e.what());
  }
  CoordinateTable t;
  if (doc.contains("extends")) {
    t = load_table(path.parent_path() / doc["extends"].get<std::string>());
    t.base_size = static_cast<int>(t.points.size());
  }
  t.name = doc.value("name", path.stem().string());
  for (const auto& j : doc.at("points")) t.points.push_back(detail::point_from_json(j));
  const int n = static_cast<int>(t.points.size());
  for (const auto& e : doc.value("edges", nlohmann::json::array())) {
    const int u = e.at(0).get<int>(), v = e.at(1).get<int>();
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
      throw CertifyError(t.name + ": bad edge [" + std::to_string(u) + "," + std::to_string(v) + "]");
    }
    t.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Radical points: exact arithmetic.

inline RadicalValue squared_distance(const RadicalPoint& a, const RadicalPoint& b) {
  const RadicalValue dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

struct ExactEdgeCheck {
  Edge edge;
  RadicalValue squared_length;
  bool ok() const { return squared_length == RadicalValue(1); }
};

struct Table1Report {
  int vertices = 0;
  std::vector<ExactEdgeCheck> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.ok(); });
  }
};

/// Every declared edge must have squared length exactly 1.
inline Table1Report verify_table1(const CoordinateTable& t) {
  Table1Report r;
  r.vertices = static_cast<int>(t.points.size());
  for (const auto& p : t.points)
    if (!p.is_radical()) throw CertifyError(p.id + ": table point is not a radical expression");
  for (const auto& [u, v] : t.edges) {
    r.checks.push_back({Edge{u, v}, squared_distance(std::get<RadicalPoint>(t.points[u].value),
                                                     std::get<RadicalPoint>(t.points[v].value))});
  }
  return r;
}

// ---------------------------------------------------------------------------
// Algebraic points: root refinement.

struct RefinedRoot {
  ComplexInterval box;  // certified to contain exactly one root of minpoly
  int bits = 0;
  double approx_error = 0;  // bound on the coordinate distance to the printed approx
};

namespace detail {

inline ComplexInterval point(const mpq_class& x, const mpq_class& y, mpfr_prec_t prec) {
  return ComplexInterval(Interval::of(x, prec), Interval::of(y, prec)).mid();
}

// K(Z) = m - Y p(m) + (1 - Y p'(Z)) (Z - m). K(Z) inside the interior of Z
// proves Z holds exactly one root, and that root also lies in K(Z).
inline ComplexInterval krawczyk(const std::vector<mpz_class>& f, const std::vector<mpz_class>& df,
                                const ComplexInterval& z) {
  const mpfr_prec_t prec = z.re.prec();
  const ComplexInterval m = z.mid();
  const ComplexInterval one(Interval::of(1L, prec), Interval::of(0L, prec));
  const ComplexInterval y = (one / eval_poly(df, m)).mid();
  return m - y * eval_poly(f, m) + (one - y * eval_poly(df, z)) * (z - m);
}

}  // namespace detail

/// Newton from the printed approximation, then a Krawczyk-certified box of
/// width about 2^-bits. The certified root must round to the printed digits.
inline RefinedRoot refine(const AlgebraicPoint& p, int bits) {
  const mpfr_prec_t prec = bits + 64;
  const auto& f = p.minpoly;
  const auto df = derivative(f);
  const mpq_class ax = parse_decimal(p.approx[0]), ay = parse_decimal(p.approx[1]);

  ComplexInterval z = detail::point(ax, ay, prec);
  for (int it = 0; it < 4 * bits; ++it) {
    const ComplexInterval step = (eval_poly(f, z) / eval_poly(df, z)).mid();
    z = (z - step).mid();
    const double s = std::max(step.re.mag(), step.im.mag());
    if (s == 0 || std::log2(s) < -static_cast<double>(prec) + 8) break;
  }

  std::optional<ComplexInterval> box;
  for (int e : {bits / 3, bits / 4, 40, 24, 16}) {
    mpfr_t rad;
    mpfr_init2(rad, prec);
    mpfr_set_ui_2exp(rad, 1, -e, MPFR_RNDU);
    const ComplexInterval cand(Interval::around(z.re.lo(), rad, prec), Interval::around(z.im.lo(), rad, prec));
    mpfr_clear(rad);
    try {
      const ComplexInterval k = detail::krawczyk(f, df, cand);
      if (cand.strictly_contains(k)) {
        box = k;
        break;
      }
    } catch (const std::domain_error&) {
    }
  }
  if (!box) throw CertifyError("box does not isolate a root near (" + p.approx[0] + ", " + p.approx[1] + ")");
  for (int it = 0; it < 8 && box->width_exp2() > -bits; ++it) {
    try {
      *box = detail::krawczyk(f, df, *box).intersect(*box);
    } catch (const std::domain_error&) {
      break;
    }
  }

  // One unit in the last printed digit: a few printed values are double-rounded.
  const double err = std::max((box->re - Interval::of(ax, prec)).mag(), (box->im - Interval::of(ay, prec)).mag());
  if (err > std::pow(10.0, -p.digits)) {
    throw CertifyError("certified root is not within one unit of (" + p.approx[0] + ", " + p.approx[1] + ")");
  }
  return {std::move(*box), bits, err};
}

/// |minpoly(mid)| relative to the sum of |coefficients|, at the box midpoint.
inline double relative_residual(const AlgebraicPoint& p, const RefinedRoot& r) {
  const ComplexInterval v = eval_poly(p.minpoly, r.box.mid());
  double scale = 0;
  for (const auto& c : p.minpoly) scale += std::abs(c.get_d());
  return std::hypot(v.re.mag(), v.im.mag()) / scale;
}

/// Enclosure of the point (x, y) at the given precision.
inline ComplexInterval enclose(const TablePoint& p, int bits) {
  const mpfr_prec_t prec = bits + 64;
  if (const auto* r = std::get_if<RadicalPoint>(&p.value))
    return {Interval::of(r->x, prec), Interval::of(r->y, prec)};
  const auto& a = std::get<AlgebraicPoint>(p.value);
  try {
    ComplexInterval b = refine(a, bits).box;
    return {b.re + Interval::of(a.offset[0], prec), b.im + Interval::of(a.offset[1], prec)};
  } catch (const CertifyError& e) {
    throw CertifyError(p.id + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Distance certificates.

enum class DistanceVerdict { unit, non_unit };

struct DistanceCertificate {
  std::string a;
  std::string b;
  DistanceVerdict verdict = DistanceVerdict::non_unit;
  bool exact = false;       // decided in radical arithmetic
  double margin = 0;        // unit: bound on ||p-q|^2 - 1|; non-unit: lower bound on it
  int precision_bits = 0;   // 0 when exact
};

inline nlohmann::json to_json(const DistanceCertificate& c) {
  return {{"pair", {c.a, c.b}},
          {"verdict", c.verdict == DistanceVerdict::unit ? "unit" : "non-unit"},
          {"exact", c.exact},
          {"margin", c.margin},
          {"precision_bits", c.precision_bits}};
}

/// Caches point enclosures per precision on the ladder 128, 256, ..., max_bits.
class Certifier {
 public:
  explicit Certifier(const CoordinateTable& t, int max_bits = kMaxPrecisionBits) : t_(t), max_bits_(max_bits) {}

  const ComplexInterval& enclosure(int i, int bits) {
    auto& level = cache_[bits];
    if (level.empty()) level.resize(t_.points.size());
    if (!level[i]) level[i] = enclose(t_.points[i], bits);
    return *level[i];
  }

  /// Throws CertifyError when no threshold is met at max_bits, or when the
  /// points may coincide.
  DistanceCertificate certify(int i, int j) {
    if (j < i) std::swap(i, j);
    DistanceCertificate c{t_.points[i].id, t_.points[j].id};
    const auto* ri = std::get_if<RadicalPoint>(&t_.points[i].value);
    const auto* rj = std::get_if<RadicalPoint>(&t_.points[j].value);
    std::optional<bool> exact_unit;
    if (ri != nullptr && rj != nullptr) {
      const RadicalValue d2 = squared_distance(*ri, *rj);
      if (d2.is_zero()) throw CertifyError(pair_name(i, j) + ": duplicate points");
      exact_unit = d2 == RadicalValue(1);
      if (*exact_unit) {
        c.verdict = DistanceVerdict::unit;
        c.exact = true;
        return c;
      }
    }
    for (int bits = 128; bits <= max_bits_; bits *= 2) {
      const ComplexInterval& p = enclosure(i, bits);
      const ComplexInterval& q = enclosure(j, bits);
      const Interval d2 = (p.re - q.re).square() + (p.im - q.im).square();
      const Interval gap = d2 - Interval::of(1L, bits + 64);
      const bool apart = d2.mig() > kDuplicateDistance * kDuplicateDistance;
      if (apart && gap.mag() < kUnitMargin && !exact_unit) {
        c.verdict = DistanceVerdict::unit;
        c.margin = gap.mag();
        c.precision_bits = bits;
        return c;
      }
      if (apart && gap.mig() > kNonUnitMargin) {
        c.verdict = DistanceVerdict::non_unit;
        c.exact = exact_unit.has_value();
        c.margin = gap.mig();
        c.precision_bits = exact_unit ? 0 : bits;
        return c;
      }
      if (d2.mag() < kDuplicateDistance * kDuplicateDistance) {
        throw CertifyError(pair_name(i, j) + ": duplicate points");
      }
    }
    throw CertifyError(pair_name(i, j) + ": ambiguous at " + std::to_string(max_bits_) + " bits");
  }

 private:
  std::string pair_name(int i, int j) const { return t_.points[i].id + "-" + t_.points[j].id; }

  const CoordinateTable& t_;
  int max_bits_;
  std::map<int, std::vector<std::optional<ComplexInterval>>> cache_;
};

inline DistanceCertificate certify_distance(const TablePoint& p, const TablePoint& q,
                                            int max_bits = kMaxPrecisionBits) {
  CoordinateTable t;
  t.points = {p, q};
  return Certifier(t, max_bits).certify(0, 1);
}

struct BuildResult {
  PointSet points;
  std::vector<DistanceCertificate> unit_certificates;
  std::size_t pairs_checked = 0;
  int max_bits_used = 0;
};

/// Classifies every pair; unit pairs become the host graph.
inline BuildResult build_pointset(const CoordinateTable& t, int max_bits = kMaxPrecisionBits) {
  BuildResult r;
  Certifier cert(t, max_bits);
  const int n = static_cast<int>(t.points.size());
  r.points.name = t.name;
  for (int i = 0; i < n; ++i) {
    const ComplexInterval& e = cert.enclosure(i, 128);
    r.points.ids.push_back(t.points[i].id);
    r.points.coords.push_back({e.re.mid_d(), e.im.mid_d()});
    r.points.provenance.push_back(t.points[i].is_radical() ? "radical" : "algebraic");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      DistanceCertificate c = cert.certify(i, j);
      ++r.pairs_checked;
      r.max_bits_used = std::max(r.max_bits_used, c.precision_bits);
      if (c.verdict == DistanceVerdict::unit) {
        r.points.unit_pairs.emplace_back(i, j);
        r.unit_certificates.push_back(std::move(c));
      }
    }
  }
  return r;
}

struct EdgeCertificationReport {
  std::string name;
  int points = 0;
  int refined = 0;                  // algebraic points with a certified root
  double worst_relative_residual = 0;
  std::vector<DistanceCertificate> edges;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Refines every algebraic point and certifies every declared edge as unit.
inline EdgeCertificationReport certify_declared_edges(const CoordinateTable& t, int max_bits = kMaxPrecisionBits) {
  EdgeCertificationReport r;
  r.name = t.name;
  r.points = static_cast<int>(t.points.size());
  for (const auto& p : t.points) {
    const auto* a = std::get_if<AlgebraicPoint>(&p.value);
    if (a == nullptr) continue;
    try {
      const RefinedRoot root = refine(*a, 256);
      r.worst_relative_residual = std::max(r.worst_relative_residual, relative_residual(*a, root));
      ++r.refined;
    } catch (const CertifyError& e) {
      r.failures.push_back(p.id + ": " + e.what());
    }
  }
  Certifier cert(t, max_bits);
  for (const auto& [u, v] : t.edges) {
    try {
      DistanceCertificate c = cert.certify(u, v);
      if (c.verdict != DistanceVerdict::unit) {
        r.failures.push_back(c.a + "-" + c.b + ": declared edge is not unit (margin " + std::to_string(c.margin) + ")");
      }
      r.edges.push_back(std::move(c));
    } catch (const CertifyError& e) {
      r.failures.push_back(e.what());
    }
  }
  return r;
}

}  // namespace udg
