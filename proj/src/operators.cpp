#include "germcalc/operators.hpp"

#include <algorithm>
#include <map>

#include "germcalc/errors.hpp"

namespace germcalc {

Jet schwarz(const Jet& f) {
  Jet::CoeffMap c;
  for (const auto& [alpha, v] : f.coeffs()) c.emplace(alpha, v.conj());
  return Jet(f.dim(), f.order(), conj(f.base()), std::move(c));
}

Jet compose(const Jet& f, const std::vector<Jet>& g) {
  require(!g.empty(), ErrorKind::DimensionMismatch, "compose: no inner germs");
  require(f.dim() == static_cast<int>(g.size()), ErrorKind::DimensionMismatch,
          "compose: inner arity must match outer dimension");
  int k = f.order();
  for (const auto& gi : g) k = std::min(k, gi.order());

  // w_i = g_i - a_i have zero constant term, so monomials of degree > k in f
  // cannot reach orders <= k and truncation at k everywhere is exact.
  std::vector<Jet> w;
  w.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    require(g[i].same_frame(g[0]), ErrorKind::BaseMismatch,
            "compose: inner germs must share one base point");
    require(g[i].value() == f.base()[i], ErrorKind::BaseMismatch,
            "compose: inner germ values must equal the outer base point");
    Jet t = g[i].truncated(k);
    w.push_back(t.with_coeff(MultiIndex::zero(t.dim()), GaussianRational(0)));
  }

  Polynomial fw(f.dim());
  {
    Polynomial::CoeffMap m;
    for (const auto& [alpha, v] : f.coeffs())
      if (static_cast<int>(alpha.degree()) <= k) m.emplace(alpha, v);
    fw = Polynomial(f.dim(), std::move(m));
  }
  return fw.eval_jets(w, k);
}

Jet implicit_fn(const Jet& f, int k_out) {
  const int n = f.dim();
  require(n >= 2, ErrorKind::ImplicitNotApplicable,
          "implicit function extraction needs at least two variables");
  // The domain test reads the first-order coefficient, so order >= 1 is
  // needed even for an order-0 result.
  require(k_out >= 0 && f.order() >= std::max(k_out, 1), ErrorKind::OrderTooLow,
          "implicit function: input order below requested output order");
  require(f.value().is_zero(), ErrorKind::ImplicitNotApplicable,
          "implicit function: germ value at the base point is nonzero");
  const GaussianRational den = f.coeff(MultiIndex::unit(n, n));
  require(!den.is_zero(), ErrorKind::ImplicitNotApplicable,
          "implicit function: derivative along the last axis vanishes at the base");

  Point base_out(f.base().begin(), f.base().end() - 1);
  const GaussianRational a_n = f.base().back();

  // phi = a_n + sum d_beta (z'-a')^beta, solved order by order: the order-q
  // residual coefficient is den*d_beta plus terms in lower-order unknowns.
  Jet phi = Jet::constant(n - 1, k_out, base_out, a_n);
  for (int q = 1; q <= k_out; ++q) {
    std::vector<Jet> inner;
    inner.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i < n; ++i) inner.push_back(Jet::coordinate(n - 1, q, base_out, i));
    inner.push_back(phi.truncated(q));
    Jet residual = compose(f.truncated(q), inner);
    Jet::CoeffMap c = phi.coeffs();
    for (const auto& [beta, r] : residual.coeffs()) {
      if (static_cast<int>(beta.degree()) != q) continue;
      c[beta] = -(r / den);
    }
    phi = Jet(n - 1, k_out, base_out, std::move(c));
  }
  return phi;
}

Jet monomial_div(const Jet& f) {
  const int n = f.dim();
  require(f.order() >= 1, ErrorKind::OrderTooLow,
          "monomial division needs a jet of order >= 1");
  Jet::CoeffMap c;
  for (const auto& [alpha, v] : f.coeffs()) {
    if (alpha[n - 1] == 0)
      fail(ErrorKind::DivisionNotDefined,
           "monomial division: germ does not vanish on the hyperplane z_" +
               std::to_string(n) + " = a_" + std::to_string(n) + " (coefficient at " +
               alpha.to_string() + ")");
    c.emplace(alpha.minus(n), v);
  }
  return Jet(n, f.order() - 1, f.base(), std::move(c));
}

Jet deramify(const Jet& f, unsigned m) {
  require(m >= 1, ErrorKind::BadArgument, "deramification index must be positive");
  const int n = f.dim();
  const int k_out = f.order() / static_cast<int>(m);
  Jet::CoeffMap c;
  for (const auto& [alpha, v] : f.coeffs()) {
    if (alpha[n - 1] % m != 0)
      fail(ErrorKind::NotDeramifiable,
           "deramification: coefficient at " + alpha.to_string() +
               " breaks the order-" + std::to_string(m) + " rotational symmetry");
    MultiIndex beta = alpha;
    std::vector<std::uint32_t> e = alpha.entries();
    e[static_cast<std::size_t>(n - 1)] /= m;
    beta = MultiIndex(std::move(e));
    if (static_cast<int>(beta.degree()) <= k_out) c.emplace(beta, v);
  }
  return Jet(n, k_out, f.base(), std::move(c));
}

}  // namespace germcalc
