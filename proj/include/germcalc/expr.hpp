#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "germcalc/jet.hpp"
#include "germcalc/polynomial.hpp"

namespace germcalc {

enum class ExprKind {
  Poly,
  GaussianPoly,
  Schwarz,
  Compose,
  Partial,
  Implicit,
  MonomialDiv,
  Deram,
  InputGerm,
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

/// One node of an operator-expression DAG. Sub-expressions may be shared;
/// evaluation memoizes per (node, order).
struct ExprNode {
  ExprKind kind;
  Polynomial poly = Polynomial(1);       // Poly / GaussianPoly payload
  Point base;                            // Poly / GaussianPoly / InputGerm base point
  std::string name;                      // InputGerm
  int axis = 0;                          // Partial
  unsigned deram_m = 0;                  // Deram
  std::vector<ExprPtr> children;
};

ExprPtr make_germ(std::string name, Point base);
ExprPtr make_poly(Polynomial p, Point base, bool gaussian);
ExprPtr make_schwarz(ExprPtr e);
ExprPtr make_compose(ExprPtr outer, std::vector<ExprPtr> inner);
ExprPtr make_partial(int axis, ExprPtr e);
ExprPtr make_implicit(ExprPtr e);
ExprPtr make_monomial_div(ExprPtr e);
ExprPtr make_deram(unsigned m, ExprPtr e);

/// Parses the s-expression grammar:
///   EXPR := (germ NAME BASE) | (poly POLYSPEC BASE) | (gpoly POLYSPEC BASE)
///         | (schwarz EXPR) | (compose EXPR EXPR+) | (partial J EXPR)
///         | (implicit EXPR) | (mdiv EXPR) | (deram M EXPR)
///   BASE := '[' literal (',' literal)* ']' | literal
/// with literals like "1/2", "-3", "1/2+3/4 i", and POLYSPEC a nested
/// (+ - * ^) tree over variables z1..zn ('z' is shorthand for z1) and
/// Gaussian rational literals. Errors carry the source offset.
ExprPtr parse_expr(const std::string& text);

/// Parses just a POLYSPEC; `dim` fixes the variable count.
Polynomial parse_polynomial(const std::string& text, int dim);

std::string to_string(const ExprPtr& e);

enum class OperatorClass { BStar, CStar, DStar };
const char* operator_class_name(OperatorClass c);

struct Classification {
  OperatorClass cls;
  bool gaussian_only;  // every polynomial leaf is a Gaussian polynomial
};

/// Smallest class containing all node kinds: monomial division forces C*,
/// deramification forces D*.
Classification classify(const ExprPtr& e);

/// Upper bound on the input order needed per output order, composed from the
/// per-operator atoms n->n, n->n+1 and n->m*n along each path from the root
/// to a germ leaf. Compositions of these atoms are affine maps, so the bound
/// is a pointwise max of affine pieces. The bound is computed for the given
/// expression tree; equivalent rewritings may admit smaller bounds.
class ShiftBound {
public:
  explicit ShiftBound(std::vector<std::pair<long, long>> pieces);
  long operator()(long n) const;
  /// True iff every piece has slope one, i.e. bound(n) <= n + excess.
  bool has_constant_excess() const;
  long constant_excess() const;
  const std::vector<std::pair<long, long>>& pieces() const { return pieces_; }
  std::string to_string() const;

private:
  std::vector<std::pair<long, long>> pieces_;  // (A, B): n -> A*n + B
};

ShiftBound shift_bound(const ExprPtr& e);

/// Bindings for the germ leaves. One name may be bound at several base
/// points; a leaf (germ f [a]) resolves against the binding whose base is a.
class GermEnv {
public:
  void bind(const std::string& name, Jet jet);
  const Jet* find(const std::string& name, const Point& base) const;
  /// Deterministically ordered view of all bindings.
  std::vector<std::pair<std::string, const Jet*>> bindings() const;
  GermEnv with_replaced(const std::string& name, const Point& base, Jet jet) const;

private:
  std::map<std::string, std::vector<Jet>> map_;
};

/// Evaluates the expression to an order-k_out jet, exactly. Inputs whose
/// order is below the shift bound raise OrderTooLow rather than silently
/// truncating.
Jet apply_expr(const ExprPtr& e, const GermEnv& env, int k_out);

/// Adds a single monomial of total degree `probe_order` (coefficient 1) to
/// one bound germ at a time and reports whether any such perturbation changes
/// the output jet at order <= n. A true result certifies that the shift of
/// the expression at n is >= probe_order. Perturbations that leave an
/// operator's domain are skipped.
bool measure_shift_lower_bound(const ExprPtr& e, const GermEnv& env, int n, int probe_order);

/// Largest probe order in 0..probe_max that changes the output at order <= n
/// (0 when none does).
long measured_shift(const ExprPtr& e, const GermEnv& env, int n, int probe_max);

struct StabilityTrial {
  std::uint64_t seed;
  enum class Status { Zero, NonZero, DomainError } status;
};

struct StabilityReport {
  bool baseline_zero = false;
  int tested_order = 0;
  int preserved_order = 0;
  std::vector<StabilityTrial> trials;
  bool stable() const;
};

/// Randomly perturbs every bound germ beyond order K (jets to order K are
/// preserved) and reports whether the expression stays zero to tested_order.
StabilityReport vanishing_stability_test(const ExprPtr& e, const GermEnv& env, int K,
                                         int trials, int tested_order, std::uint64_t seed);

}  // namespace germcalc
