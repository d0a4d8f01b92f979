#pragma once

// Exact arithmetic on rational linear combinations of square roots of
// squarefree positive integers, e.g. 7*sqrt(35)/60 + sqrt(11)/12.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace udg {

class RadicalValue {
 public:
  RadicalValue() = default;
  RadicalValue(long n) : RadicalValue(mpq_class(n)) {}  // NOLINT(google-explicit-constructor)
  RadicalValue(const mpq_class& q) {                    // NOLINT(google-explicit-constructor)
    if (q != 0) terms_[1] = q;
  }

  /// c * sqrt(k) for k >= 0, with square factors of k pulled out.
  static RadicalValue sqrt(std::uint64_t k, const mpq_class& c = 1) {
    if (k == 0 || c == 0) return {};
    std::uint64_t outside = 1;
    for (std::uint64_t p = 2; p * p <= k; ++p) {
      while (k % (p * p) == 0) {
        k /= p * p;
        outside *= p;
      }
    }
    RadicalValue r;
    r.terms_[k] = c * mpq_class(mpz_class(std::to_string(outside)));
    return r;
  }

  /// radicand -> coefficient; radicands are squarefree, coefficients nonzero.
  const std::map<std::uint64_t, mpq_class>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1); }
  mpq_class rational_part() const {
    auto it = terms_.find(1);
    return it == terms_.end() ? mpq_class(0) : it->second;
  }

  double to_double() const {
    double s = 0;
    for (const auto& [k, c] : terms_) s += c.get_d() * std::sqrt(static_cast<double>(k));
    return s;
  }

  RadicalValue operator-() const {
    RadicalValue r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
  }

  RadicalValue& operator+=(const RadicalValue& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  RadicalValue& operator-=(const RadicalValue& o) { return *this += -o; }

  friend RadicalValue operator+(RadicalValue a, const RadicalValue& b) { return a += b; }
  friend RadicalValue operator-(RadicalValue a, const RadicalValue& b) { return a -= b; }

  friend RadicalValue operator*(const RadicalValue& a, const RadicalValue& b) {
    RadicalValue r;
    for (const auto& [ka, ca] : a.terms_) {
      for (const auto& [kb, cb] : b.terms_) {
        // sqrt(ka) * sqrt(kb) = g * sqrt(ka/g * kb/g), still squarefree.
        const std::uint64_t g = std::gcd(ka, kb);
        r.add_term((ka / g) * (kb / g), ca * cb * mpq_class(mpz_class(std::to_string(g))));
      }
    }
    return r;
  }

  /// Division by a nonzero rational.
  friend RadicalValue operator/(RadicalValue a, const mpq_class& q) {
    if (q == 0) throw std::domain_error("radical division by zero");
    for (auto& [k, c] : a.terms_) c /= q;
    return a;
  }

  friend bool operator==(const RadicalValue& a, const RadicalValue& b) { return a.terms_ == b.terms_; }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : terms_) {
      mpq_class a = abs(c);
      std::string t;
      if (k == 1) {
        t = a.get_str();
      } else {
        const std::string root = "sqrt(" + std::to_string(k) + ")";
        t = a.get_num() == 1 ? root : a.get_num().get_str() + "*" + root;
        if (a.get_den() != 1) t += "/" + a.get_den().get_str();
      }
      if (s.empty()) s = c < 0 ? "-" + t : t;
      else s += (c < 0 ? " - " : " + ") + t;
    }
    return s;
  }

 private:
  void add_term(std::uint64_t k, const mpq_class& c) {
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) it->second += c;
    if (it->second == 0) terms_.erase(it);
  }

  std::map<std::uint64_t, mpq_class> terms_;
};

class RadicalParseError : public std::invalid_argument {
 public:
  RadicalParseError(const std::string& text, std::size_t offset, const std::string& what)
      : std::invalid_argument("cannot parse '" + text + "' at offset " + std::to_string(offset) + ": " + what) {}
};

namespace detail {

// expr := term (('+' | '-') term)*
// term := unary (('*' | '/') unary)*
// unary := '-' unary | atom
// atom := integer | 'sqrt(' integer ')' | '(' expr ')'
class RadicalParser {
 public:
  explicit RadicalParser(std::string_view s) : s_(s) {}

  RadicalValue parse() {
    RadicalValue v = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const { throw RadicalParseError(std::string(s_), pos_, what); }

  RadicalValue expr() {
    RadicalValue v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }

  RadicalValue term() {
    RadicalValue v = unary();
    for (;;) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        const std::size_t at = pos_;
        const RadicalValue d = unary();
        if (!d.is_rational() || d.is_zero()) {
          pos_ = at;
          fail("divisor must be a nonzero rational");
        }
        v = v / d.rational_part();
      } else {
        return v;
      }
    }
  }

  RadicalValue unary() {
    if (eat('-')) return -unary();
    return atom();
  }

  std::string integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(s_.substr(start, pos_ - start));
  }

  RadicalValue atom() {
    skip();
    if (eat('(')) {
      RadicalValue v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (s_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!eat('(')) fail("expected '(' after sqrt");
      const std::string k = integer();
      if (!eat(')')) fail("expected ')'");
      if (k.size() > 18) fail("radicand too large");
      return RadicalValue::sqrt(std::stoull(k));
    }
    return RadicalValue(mpq_class(mpz_class(integer(), 10)));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RadicalValue parse_radical(std::string_view s) { return detail::RadicalParser(s).parse(); }

}  // namespace udg
