#pragma once

#include <vector>

#include "germcalc/jet.hpp"
#include "germcalc/polynomial.hpp"

namespace germcalc {

/// The elementary operators on germs, acting on jets. Each one returns the
/// largest output order it can certify exactly from its inputs. All are pure
/// functions over immutable values.

/// z -> conj(f(conj z)). Conjugates the base point and every coefficient.
Jet schwarz(const Jet& f);

/// f(g_1, ..., g_n) at the common base of the g_i. The inner germ values must
/// equal the outer base point exactly; output order is the minimum of all
/// input orders.
Jet compose(const Jet& f, const std::vector<Jet>& g);

/// The germ phi in one fewer variable with f(z', phi(z')) = 0, solved degree
/// by degree; each order costs one exact division by df/dz_n at the base.
/// Requires f(a) = 0, df/dz_n(a) != 0 and f.order() >= k_out.
Jet implicit_fn(const Jet& f, int k_out);

/// f / (z_n - a_n), defined when f vanishes identically on z_n = a_n.
/// Output order drops by one.
Jet monomial_div(const Jet& f);

/// f(z', a_n + (z_n - a_n)^(1/m)), defined when every stored coefficient with
/// z_n-exponent not divisible by m vanishes. Output order is floor(order/m).
Jet deramify(const Jet& f, unsigned m);

/// Arity-0 polynomial operator: the jet of P at `base` (exact re-expansion).
inline Jet embed_polynomial(const Polynomial& P, const Point& base, int order) {
  return P.to_jet(base, order);
}

}  // namespace germcalc
