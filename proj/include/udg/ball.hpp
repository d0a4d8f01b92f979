#pragma once

// Real and rectangular complex intervals over MPFR with outward rounding.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

#include "udg/radical.hpp"

namespace udg {

class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }
  Interval(const Interval& o) : Interval(o.prec()) {
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  Interval(Interval&& o) noexcept : Interval(o.prec()) { swap(o); }
  Interval& operator=(Interval o) noexcept {
    swap(o);
    return *this;
  }
  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }
  void swap(Interval& o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }

  static Interval of(const mpq_class& q, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
  }
  static Interval of(long n, mpfr_prec_t prec) { return of(mpq_class(n), prec); }
  static Interval of(const mpz_class& z, mpfr_prec_t prec) { return of(mpq_class(z), prec); }

  static Interval sqrt(std::uint64_t k, mpfr_prec_t prec) {
    Interval r(prec);
    const mpz_class z(std::to_string(k));
    mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
    mpfr_sqrt(r.lo_, r.lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, r.hi_, MPFR_RNDU);
    return r;
  }

  static Interval of(const RadicalValue& v, mpfr_prec_t prec) {
    Interval r = of(0L, prec);
    for (const auto& [k, c] : v.terms()) r = r + of(c, prec) * sqrt(k, prec);
    return r;
  }

  /// [mid - rad, mid + rad].
  static Interval around(const mpfr_t mid, const mpfr_t rad, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_sub(r.lo_, mid, rad, MPFR_RNDD);
    mpfr_add(r.hi_, mid, rad, MPFR_RNDU);
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }
  const mpfr_t& lo() const { return lo_; }
  const mpfr_t& hi() const { return hi_; }

  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
  }
  Interval operator-() const {
    Interval r(prec());
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    const mpfr_prec_t p = std::max(a.prec(), b.prec());
    Interval r(p);
    mpfr_t t;
    mpfr_init2(t, p);
    const mpfr_t* xs[2] = {&a.lo_, &a.hi_};
    const mpfr_t* ys[2] = {&b.lo_, &b.hi_};
    bool first = true;
    for (auto x : xs) {
      for (auto y : ys) {
        mpfr_mul(t, *x, *y, MPFR_RNDD);
        if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, *x, *y, MPFR_RNDU);
        if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
        first = false;
      }
    }
    mpfr_clear(t);
    return r;
  }
  Interval square() const {
    Interval r = *this * *this;
    if (contains_zero()) mpfr_set_zero(r.lo_, 1);
    return r;
  }
  /// Throws if b contains zero.
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw std::domain_error("interval division by an interval containing zero");
    Interval inv(std::max(a.prec(), b.prec()));
    mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
    mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
    return a * inv;
  }

  bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
  bool contains(const Interval& o) const { return mpfr_lessequal_p(lo_, o.lo_) && mpfr_lessequal_p(o.hi_, hi_); }
  bool strictly_contains(const Interval& o) const { return mpfr_less_p(lo_, o.lo_) && mpfr_less_p(o.hi_, hi_); }

  /// Upper bound on max |x|.
  double mag() const {
    return std::max(std::abs(mpfr_get_d(lo_, MPFR_RNDA)), std::abs(mpfr_get_d(hi_, MPFR_RNDA)));
  }
  /// Lower bound on min |x|; 0 if the interval contains zero.
  double mig() const {
    if (contains_zero()) return 0;
    return mpfr_sgn(lo_) > 0 ? mpfr_get_d(lo_, MPFR_RNDZ) : -mpfr_get_d(hi_, MPFR_RNDZ);
  }
  /// Upper bound on the width.
  double width() const {
    mpfr_t t;
    mpfr_init2(t, prec());
    mpfr_sub(t, hi_, lo_, MPFR_RNDU);
    const double w = mpfr_get_d(t, MPFR_RNDU);
    mpfr_clear(t);
    return w;
  }
  /// Width bound as a base-2 exponent (avoids double underflow): width <= 2^result.
  long width_exp2() const {
    mpfr_t t;
    mpfr_init2(t, prec());
    mpfr_sub(t, hi_, lo_, MPFR_RNDU);
    const long e = mpfr_zero_p(t) ? std::numeric_limits<long>::min() : mpfr_get_exp(t);
    mpfr_clear(t);
    return e;
  }
  /// Nearest representable midpoint, as a point interval.
  Interval mid() const {
    Interval r(prec());
    mpfr_add(r.lo_, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(r.lo_, r.lo_, 1, MPFR_RNDN);
    mpfr_set(r.hi_, r.lo_, MPFR_RNDN);
    return r;
  }
  double mid_d() const {
    mpfr_t t;
    mpfr_init2(t, prec());
    mpfr_add(t, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(t, t, 1, MPFR_RNDN);
    const double d = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return d;
  }
  /// Intersection; assumes the intervals overlap.
  Interval intersect(const Interval& o) const {
    Interval r(std::max(prec(), o.prec()));
    mpfr_max(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
  }
  bool overlaps(const Interval& o) const { return mpfr_lessequal_p(lo_, o.hi_) && mpfr_lessequal_p(o.lo_, hi_); }

  std::string str(int digits = 20) const {
    auto fmt = [&](const mpfr_t x, mpfr_rnd_t rnd) {
      char* s = nullptr;
      mpfr_asprintf(&s, "%.*R*e", digits, rnd, x);
      std::string out(s);
      mpfr_free_str(s);
      return out;
    };
    return "[" + fmt(lo_, MPFR_RNDD) + ", " + fmt(hi_, MPFR_RNDU) + "]";
  }

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

struct ComplexInterval {
  Interval re;
  Interval im;

  explicit ComplexInterval(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
  ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

  friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  /// Throws if |b|^2 may vanish.
  friend ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
    const Interval den = b.re.square() + b.im.square();
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
  }

  ComplexInterval mid() const { return {re.mid(), im.mid()}; }
  bool strictly_contains(const ComplexInterval& o) const {
    return re.strictly_contains(o.re) && im.strictly_contains(o.im);
  }
  ComplexInterval intersect(const ComplexInterval& o) const { return {re.intersect(o.re), im.intersect(o.im)}; }
  long width_exp2() const { return std::max(re.width_exp2(), im.width_exp2()); }
};

/// Horner evaluation of an integer polynomial, coefficients in descending order.
inline ComplexInterval eval_poly(const std::vector<mpz_class>& coeffs, const ComplexInterval& z) {
  const mpfr_prec_t p = z.re.prec();
  ComplexInterval acc(Interval::of(0L, p), Interval::of(0L, p));
  for (const auto& c : coeffs) {
    acc = acc * z;
    acc.re = acc.re + Interval::of(c, p);
  }
  return acc;
}

inline std::vector<mpz_class> derivative(const std::vector<mpz_class>& coeffs) {
  std::vector<mpz_class> d;
  const std::size_t deg = coeffs.empty() ? 0 : coeffs.size() - 1;
  for (std::size_t k = 0; k < deg; ++k) d.push_back(coeffs[k] * static_cast<long>(deg - k));
  return d;
}

}  // namespace udg
