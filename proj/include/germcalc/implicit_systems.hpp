#pragma once

#include <utility>
#include <vector>

#include "germcalc/jet.hpp"
#include "germcalc/polynomial.hpp"

namespace germcalc {

/// Exponential-polynomial system F(x) = P(x, e^x). Each component is a
/// polynomial in the germ coordinates x_1..x_d, the unknown slots t_1..t_n,
/// and one exponential counterpart per variable. Inside a component
/// polynomial the variables are ordered
///   x_1..x_d, t_1..t_n, Y(x_1)..Y(x_d), Y(t_1)..Y(t_n)
/// where Y(v) stands for e^v.
class ImplicitSystem {
public:
  ImplicitSystem(int base_dim, int size, std::vector<Polynomial> components);

  int base_dim() const { return base_dim_; }
  int size() const { return size_; }
  int var_count() const { return base_dim_ + size_; }
  int poly_dim() const { return 2 * var_count(); }
  const std::vector<Polynomial>& components() const { return components_; }

  /// 1-based polynomial-variable positions.
  int x_var(int i) const;
  int t_var(int j) const;
  int y_var(int v) const;  // exponential slot of variable v in 1..var_count()

  /// True iff some component uses e^v for the given variable.
  bool any_uses_y(int v) const;

private:
  int base_dim_;
  int size_;
  std::vector<Polynomial> components_;
};

/// Candidate solution: the unknown germs psi_1..psi_n as jets of dimension
/// base_dim at a common base. The leading coordinate germs (psi_0 in size-1
/// base form) are implicit.
class ImplicitSolution {
public:
  explicit ImplicitSolution(std::vector<Jet> unknowns);

  int base_dim() const { return unknowns_[0].dim(); }
  int size() const { return static_cast<int>(unknowns_.size()); }
  const Point& base() const { return unknowns_[0].base(); }
  int order() const;
  const std::vector<Jet>& unknowns() const { return unknowns_; }
  const Jet& unknown(int j) const { return unknowns_[static_cast<std::size_t>(j - 1)]; }

private:
  std::vector<Jet> unknowns_;
};

/// The n residual jets of F(Psi(z)) to order k, exact. Exponentials are
/// expanded through the rational exponential jet at 0, so every germ whose
/// exponential occurs in F must vanish at the base point.
std::vector<Jet> eval_residual(const ImplicitSystem& F, const ImplicitSolution& psi, int k);

struct CheckResult {
  bool residual_zero;
  bool jacobian_invertible;
  bool ok() const { return residual_zero && jacobian_invertible; }
};

/// Residuals to order k plus exact invertibility of dF/dt at the base point.
CheckResult check_solution(const ImplicitSystem& F, const ImplicitSolution& psi, int k);

/// The Jacobian dF/dt evaluated exactly at the base point (rows: components,
/// columns: unknowns).
std::vector<std::vector<GaussianRational>> jacobian_at_base(const ImplicitSystem& F,
                                                            const ImplicitSolution& psi);

using SystemPair = std::pair<ImplicitSystem, ImplicitSolution>;

/// Conjugated system solving the Schwarz-reflected solution.
SystemPair closure_schwarz(const ImplicitSystem& F, const ImplicitSolution& psi);

/// Stacks G (whose leading F.base_dim() unknowns are the chain germs) with F
/// re-wired onto those slots; defines psi_F,1 composed with the chain. The
/// chain values must equal F's base exactly. Output size is G.size + F.size.
SystemPair closure_compose(const ImplicitSystem& G, const ImplicitSolution& psi_g,
                           const ImplicitSystem& F, const ImplicitSolution& psi_f);

/// Adjoins the differentiated system in fresh slots; defines the axis-th
/// partial derivative of psi_1. Output size is 2n.
SystemPair closure_derivative(const ImplicitSystem& F, const ImplicitSolution& psi, int axis);

/// Moves the last germ coordinate into a fresh unknown slot pinned by the
/// implicit function of psi_1. Output has base dimension d-1 and size n+1.
SystemPair closure_implicit(const ImplicitSystem& F, const ImplicitSolution& psi);

/// Integer linear relation d * psi_n = a_0 * z + sum a_i * psi_i + K.
struct LinearRelation {
  long d = 1;
  std::vector<long> coeffs;  // a_0..a_{n-1}
  GaussianRational constant;
};

struct ReducedPair {
  ImplicitSystem system;
  ImplicitSolution solution;
  int verified_order;
};

/// Eliminates the last unknown through a verified linear relation, rescaling
/// the solution onto d*z, and selects component rows with an exactly
/// invertible reduced Jacobian. Output size is n-1.
ReducedPair reduce_linear_relation(const ImplicitSystem& F, const ImplicitSolution& psi,
                                   const LinearRelation& rel);

/// Rank of a matrix over Q(i) by exact Gaussian elimination.
int matrix_rank(std::vector<std::vector<GaussianRational>> m);

}  // namespace germcalc
