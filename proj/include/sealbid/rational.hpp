#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "sealbid/errors.hpp"

namespace sealbid {

/// Exact rational number. All value arithmetic in this library is exact;
/// floating point never touches values, payments, or utilities.
///
/// Backed by GMP's mpq_class, which keeps the canonical form invariant
/// (lowest terms, positive denominator) on every operation.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long num, long den) : q_(num, den) {
    if (den == 0) throw ParseError("rational: zero denominator");
    q_.canonicalize();
  }
  explicit Rational(long n) : q_(n) {}
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "p/q", an integer, or an exact decimal such as "0.35"
  /// (denominator a power of ten). Rejects anything else.
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return q_; }

  /// Canonical form: "p" for integers, otherwise "p/q" in lowest terms.
  std::string str() const { return q_.get_str(); }

  /// Decimal rendering for human-facing summaries only (never round-trips).
  double approx() const { return q_.get_d(); }

  bool is_zero() const { return q_ == 0; }
  bool is_negative() const { return q_ < 0; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw ParseError("rational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  mpq_class q_;
};

inline Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw ParseError("rational: empty string");
  std::string s(text);

  auto is_int = [](std::string_view v) {
    if (v.empty()) return false;
    std::size_t i = (v[0] == '-' || v[0] == '+') ? 1 : 0;
    if (i == v.size()) return false;
    for (; i < v.size(); ++i)
      if (v[i] < '0' || v[i] > '9') return false;
    return true;
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) throw ParseError("rational: bad fraction '" + s + "'");
    mpz_class denominator(den);
    if (denominator == 0) throw ParseError("rational: zero denominator in '" + s + "'");
    mpq_class q{mpz_class(num), denominator};
    return Rational(q);
  }

  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (!is_int(whole) || frac.empty() || !is_int(frac) || frac[0] == '-' || frac[0] == '+')
      throw ParseError("rational: bad decimal '" + s + "'");
    bool negative = whole[0] == '-';
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class numerator = mpz_class(whole) * scale;
    mpz_class frac_part(frac);
    numerator += negative ? -frac_part : frac_part;
    return Rational(mpq_class(numerator, scale));
  }

  if (!is_int(s)) throw ParseError("rational: bad integer '" + s + "'");
  return Rational(mpq_class(mpz_class(s)));
}

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational abs(const Rational& a) { return a.is_negative() ? -a : a; }

}  // namespace sealbid
