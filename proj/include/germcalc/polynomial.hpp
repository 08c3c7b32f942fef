#pragma once

#include <map>
#include <vector>

#include "germcalc/jet.hpp"

namespace germcalc {

/// Sparse multivariate polynomial over Q(i). Backs the arity-0 polynomial
/// operators, the blow-up chart maps and the exponential-polynomial systems.
class Polynomial {
public:
  using CoeffMap = std::map<MultiIndex, GaussianRational>;

  explicit Polynomial(int dim);
  Polynomial(int dim, CoeffMap coeffs);

  static Polynomial constant(int dim, const GaussianRational& c);
  static Polynomial variable(int dim, int axis);  // z_axis, 1-based

  int dim() const { return dim_; }
  const CoeffMap& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::uint32_t degree() const;
  const GaussianRational& coeff(const MultiIndex& alpha) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const GaussianRational& c) const;
  Polynomial pow(unsigned long e) const;

  bool operator==(const Polynomial& o) const { return dim_ == o.dim_ && coeffs_ == o.coeffs_; }

  GaussianRational eval(const Point& p) const;
  /// Substitutes jets for the variables (all in one frame) and truncates.
  Jet eval_jets(const std::vector<Jet>& values, int order) const;
  /// Full polynomial substitution, no truncation.
  Polynomial substitute(const std::vector<Polynomial>& values) const;
  Polynomial partial(int axis) const;

  /// True iff the variable occurs with positive exponent somewhere.
  bool uses_variable(int axis) const;

  /// Re-embeds into `new_dim` variables, sending variable i (1-based) to
  /// variable var_map[i-1] (1-based). Distinct variables must stay distinct.
  Polynomial remap_variables(int new_dim, const std::vector<int>& var_map) const;

  /// Exact re-expansion around `base`, truncated to `order`: the jet of the
  /// germ this polynomial defines at the point.
  Jet to_jet(const Point& base, int order) const;

  std::string to_string() const;  // debugging aid, "z1^2*z2" style monomials

private:
  int dim_;
  CoeffMap coeffs_;
};

}  // namespace germcalc
