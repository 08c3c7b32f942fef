#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace germcalc {

/// An element of Q(i), the coefficient field used everywhere in this library.
///
/// Both components are arbitrary-precision rationals kept canonical by GMP
/// (lowest terms, positive denominator), so equality is plain structural
/// equality and every operation is exact.
class GaussianRational {
public:
  GaussianRational() : re_(0), im_(0) {}
  GaussianRational(long n) : re_(n), im_(0) {}  // NOLINT: implicit by design
  GaussianRational(mpq_class re, mpq_class im);
  explicit GaussianRational(mpq_class re);

  static GaussianRational i() { return GaussianRational(0, 1); }
  GaussianRational(long re_num, long im_num) : re_(re_num), im_(im_num) {}
  static GaussianRational ratio(long num, long den);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return GaussianRational(re_, -im_); }
  /// re^2 + im^2, exact.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return GaussianRational(-re_, -im_); }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  /// Exact division; the divisor must be nonzero.
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
  /// Lexicographic on (re, im); gives deterministic orderings, no analytic meaning.
  friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
    int c = cmp(a.re_, b.re_);
    return c != 0 ? c < 0 : cmp(a.im_, b.im_) < 0;
  }

  GaussianRational pow(unsigned long e) const;

  /// Canonical component string "num/den" (denominator always written).
  static std::string rational_str(const mpq_class& q);
  /// Parses "p", "-p", or "p/q"; rejects anything else.
  static mpq_class parse_rational(const std::string& text);

  /// Canonical literal: "p/q" for real values, "p/q+r/s i" or "p/q-r/s i"
  /// otherwise. `parse_literal` accepts these plus the usual relaxations
  /// ("3", "i", "-i", "3/4i", no spaces).
  std::string literal() const;
  static GaussianRational parse_literal(const std::string& text);

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& v);

private:
  mpq_class re_, im_;
};

}  // namespace germcalc
