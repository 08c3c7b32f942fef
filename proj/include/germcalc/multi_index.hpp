#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace germcalc {

/// Exponent tuple of a monomial. Components are non-negative; the length is
/// the ambient dimension. Ordered graded-lexicographically so that coefficient
/// maps iterate by total degree.
class MultiIndex {
public:
  explicit MultiIndex(std::vector<std::uint32_t> entries);
  static MultiIndex zero(int dim);
  /// Standard basis exponent e_axis (axis is 1-based).
  static MultiIndex unit(int dim, int axis);

  int dim() const { return static_cast<int>(e_.size()); }
  std::uint32_t operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
  const std::vector<std::uint32_t>& entries() const { return e_; }

  std::uint32_t degree() const;
  /// alpha! as an exact integer.
  mpz_class factorial() const;

  bool is_zero() const { return degree() == 0; }
  bool leq_componentwise(const MultiIndex& o) const;

  MultiIndex plus(int axis) const;   // alpha + e_axis
  MultiIndex minus(int axis) const;  // alpha - e_axis, requires alpha_axis >= 1
  MultiIndex operator+(const MultiIndex& o) const;
  MultiIndex operator-(const MultiIndex& o) const;  // requires o <= *this

  bool operator==(const MultiIndex& o) const { return e_ == o.e_; }
  bool operator!=(const MultiIndex& o) const { return e_ != o.e_; }
  bool operator<(const MultiIndex& o) const;

  std::string to_string() const;  // "(a,b,c)"

private:
  std::vector<std::uint32_t> e_;
};

mpz_class factorial(unsigned long n);
mpz_class binomial(unsigned long n, unsigned long k);
mpq_class mpq_binomial(unsigned long n, unsigned long k);

/// Number of multi-indices of dimension `dim` with degree <= `order`,
/// i.e. C(order + dim, dim).
std::uint64_t multi_index_count(int dim, int order);

/// All multi-indices with degree <= order, in graded-lex order.
std::vector<MultiIndex> multi_indices_up_to(int dim, int order);

}  // namespace germcalc
