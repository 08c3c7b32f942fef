#pragma once

#include <map>
#include <vector>

#include "germcalc/gaussian_rational.hpp"
#include "germcalc/multi_index.hpp"

namespace germcalc {

using Point = std::vector<GaussianRational>;

bool points_equal(const Point& a, const Point& b);
Point conj(const Point& a);

/// Truncated Taylor expansion of a holomorphic germ at a rational point:
///
///   sum over |alpha| <= order of  c_alpha * (z - base)^alpha,
///
/// where c_alpha corresponds to the alpha-th derivative divided by alpha!.
/// Coefficients live in Q(i); an absent multi-index means an exactly zero
/// coefficient. Values are immutable after construction and may be shared
/// freely between threads.
class Jet {
public:
  using CoeffMap = std::map<MultiIndex, GaussianRational>;

  Jet(int dim, int order, Point base, CoeffMap coeffs);

  static Jet zero(int dim, int order, Point base);
  static Jet constant(int dim, int order, Point base, const GaussianRational& value);
  /// The coordinate germ z_axis at `base` (axis is 1-based).
  static Jet coordinate(int dim, int order, Point base, int axis);

  int dim() const { return dim_; }
  int order() const { return order_; }
  const Point& base() const { return base_; }
  const CoeffMap& coeffs() const { return coeffs_; }
  std::size_t coeff_count() const { return coeffs_.size(); }

  /// Coefficient at alpha (zero when absent).
  const GaussianRational& coeff(const MultiIndex& alpha) const;
  /// Value at the base point, i.e. the constant coefficient.
  GaussianRational value() const { return coeff(MultiIndex::zero(dim_)); }

  bool is_zero() const { return coeffs_.empty(); }
  bool same_frame(const Jet& o) const { return dim_ == o.dim_ && points_equal(base_, o.base_); }

  /// Restriction to order k <= order().
  Jet truncated(int k) const;
  /// Copy with coefficient at alpha replaced by `value + delta` style edits.
  Jet with_coeff(const MultiIndex& alpha, const GaussianRational& value) const;

  bool operator==(const Jet& o) const;
  bool operator!=(const Jet& o) const { return !(*this == o); }

private:
  int dim_;
  int order_;
  Point base_;
  CoeffMap coeffs_;
};

Jet add(const Jet& f, const Jet& g);
Jet sub(const Jet& f, const Jet& g);
Jet negate(const Jet& f);
Jet scale(const GaussianRational& c, const Jet& f);

/// Truncated Cauchy product; output order is min(f.order, g.order).
Jet mul(const Jet& f, const Jet& g);

/// d/dz_axis; output order drops by one. Requires order >= 1.
Jet partial_derivative(const Jet& f, int axis);

/// Exact evaluation of the truncated polynomial at p.
GaussianRational evaluate_truncated(const Jet& f, const Point& p);

/// True iff all coefficients with |alpha| <= k agree exactly.
/// Requires equal frames and k <= both orders.
bool equal_to_order(const Jet& f, const Jet& g, int k);

Jet jet_pow(const Jet& f, unsigned long e, int order);

/// The exponential germ at 0 as a rational jet: coefficients 1/n!.
Jet exp_jet(int order);
/// The alternating geometric series sum (-1)^k z^(2k), i.e. 1/(1+z^2).
Jet alt_geometric_jet(int order);

/// Multi-point jet: equal-order truncations of one germ's expansions at
/// pairwise distinct points. Carries the derivative tuples via c_alpha*alpha!.
class JetTuple {
public:
  JetTuple(std::vector<Jet> jets, int order);

  int order() const { return order_; }
  const std::vector<Jet>& jets() const { return jets_; }
  /// Derivative d_alpha f(a_i) for point index i, as coeff * alpha!.
  GaussianRational derivative(std::size_t i, const MultiIndex& alpha) const;
  std::size_t entry_count() const;

private:
  std::vector<Jet> jets_;
  int order_;
};

JetTuple jet_tuple(const std::vector<Jet>& jets, int order);

}  // namespace germcalc
