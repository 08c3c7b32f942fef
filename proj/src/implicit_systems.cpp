#include "germcalc/implicit_systems.hpp"

#include <algorithm>

#include "germcalc/errors.hpp"
#include "germcalc/operators.hpp"

namespace germcalc {

ImplicitSystem::ImplicitSystem(int base_dim, int size, std::vector<Polynomial> components)
    : base_dim_(base_dim), size_(size), components_(std::move(components)) {
  require(base_dim_ >= 1, ErrorKind::DimensionMismatch, "system base dimension must be >= 1");
  require(size_ >= 1, ErrorKind::DimensionMismatch, "system size must be >= 1");
  require(static_cast<int>(components_.size()) == size_, ErrorKind::DimensionMismatch,
          "component count must equal the system size");
  for (const auto& p : components_)
    require(p.dim() == poly_dim(), ErrorKind::DimensionMismatch,
            "component polynomial must have 2*(base_dim+size) variables");
}

int ImplicitSystem::x_var(int i) const {
  require(i >= 1 && i <= base_dim_, ErrorKind::BadArgument, "x index out of range");
  return i;
}

int ImplicitSystem::t_var(int j) const {
  require(j >= 1 && j <= size_, ErrorKind::BadArgument, "t index out of range");
  return base_dim_ + j;
}

int ImplicitSystem::y_var(int v) const {
  require(v >= 1 && v <= var_count(), ErrorKind::BadArgument, "variable index out of range");
  return var_count() + v;
}

bool ImplicitSystem::any_uses_y(int v) const {
  for (const auto& p : components_)
    if (p.uses_variable(y_var(v))) return true;
  return false;
}

ImplicitSolution::ImplicitSolution(std::vector<Jet> unknowns) : unknowns_(std::move(unknowns)) {
  require(!unknowns_.empty(), ErrorKind::DimensionMismatch, "solution needs at least one germ");
  for (const auto& j : unknowns_)
    require(j.same_frame(unknowns_[0]), ErrorKind::BaseMismatch,
            "solution germs must share one frame");
}

int ImplicitSolution::order() const {
  int k = unknowns_[0].order();
  for (const auto& j : unknowns_) k = std::min(k, j.order());
  return k;
}

namespace {

// Value of variable v (1-based over x then t) on the solution.
GaussianRational var_value(const ImplicitSystem& F, const ImplicitSolution& psi, int v) {
  if (v <= F.base_dim()) return psi.base()[static_cast<std::size_t>(v - 1)];
  return psi.unknown(v - F.base_dim()).value();
}

// The jet substituted for variable v.
Jet var_jet(const ImplicitSystem& F, const ImplicitSolution& psi, int v, int k) {
  if (v <= F.base_dim())
    return Jet::coordinate(psi.base_dim(), k, psi.base(), v);
  return psi.unknown(v - F.base_dim()).truncated(k);
}

void check_exponential_point(const ImplicitSystem& F, const ImplicitSolution& psi,
                             const Polynomial& p) {
  for (int v = 1; v <= F.var_count(); ++v) {
    if (!p.uses_variable(F.y_var(v))) continue;
    require(var_value(F, psi, v).is_zero(), ErrorKind::NonRationalExponential,
            "exponential of a germ with nonzero base value is not rational; translate the "
            "solution so the germ vanishes at the base point");
  }
}

// Exp-aware partial derivative: d/dv of P(x, e^x) is dP/dv + Y(v) * dP/dY(v).
Polynomial system_partial(const ImplicitSystem& F, const Polynomial& p, int v) {
  Polynomial out = p.partial(v);
  Polynomial y_term = p.partial(F.y_var(v)) * Polynomial::variable(p.dim(), F.y_var(v));
  return out + y_term;
}

// Evaluates a component polynomial at the base point of the solution.
// Exponential slots evaluate to 1 after the vanishing check.
GaussianRational eval_component_at_base(const ImplicitSystem& F, const ImplicitSolution& psi,
                                        const Polynomial& p) {
  check_exponential_point(F, psi, p);
  Point point(static_cast<std::size_t>(F.poly_dim()), GaussianRational(0));
  for (int v = 1; v <= F.var_count(); ++v) {
    point[static_cast<std::size_t>(v - 1)] = var_value(F, psi, v);
    point[static_cast<std::size_t>(F.y_var(v) - 1)] = GaussianRational(1);
  }
  return p.eval(point);
}

ImplicitSolution check_shape(const ImplicitSystem& F, const ImplicitSolution& psi) {
  require(psi.base_dim() == F.base_dim(), ErrorKind::DimensionMismatch,
          "solution base dimension does not match the system");
  require(psi.size() == F.size(), ErrorKind::DimensionMismatch,
          "solution must provide one germ per unknown slot");
  return psi;
}

std::vector<int> identity_map(int n) {
  std::vector<int> m(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = i + 1;
  return m;
}

// Re-embeds a component of `from` into the variable layout of a system with
// new_base_dim/new_size; var_target maps old variables (x then t, 1-based)
// onto new positions, exponentials following along.
Polynomial remap_component(const ImplicitSystem& from, const Polynomial& p, int new_base_dim,
                           int new_size, const std::vector<int>& var_target) {
  int new_vars = new_base_dim + new_size;
  std::vector<int> full(static_cast<std::size_t>(from.poly_dim()));
  for (int v = 1; v <= from.var_count(); ++v) {
    int target = var_target[static_cast<std::size_t>(v - 1)];
    full[static_cast<std::size_t>(v - 1)] = target;
    full[static_cast<std::size_t>(from.y_var(v) - 1)] = new_vars + target;
  }
  return p.remap_variables(2 * new_vars, full);
}

}  // namespace

std::vector<Jet> eval_residual(const ImplicitSystem& F, const ImplicitSolution& psi_in, int k) {
  const ImplicitSolution& psi = check_shape(F, psi_in);
  require(psi.order() >= k, ErrorKind::OrderTooLow,
          "solution jets are below the requested residual order");
  const Jet exp0 = exp_jet(k);

  std::vector<Jet> values;
  values.reserve(static_cast<std::size_t>(F.poly_dim()));
  for (int v = 1; v <= F.var_count(); ++v) values.push_back(var_jet(F, psi, v, k));
  // Exponential slots, computed lazily only where some component needs them.
  values.resize(static_cast<std::size_t>(F.poly_dim()),
                Jet::zero(psi.base_dim(), k, psi.base()));
  for (int v = 1; v <= F.var_count(); ++v) {
    if (!F.any_uses_y(v)) continue;
    require(var_value(F, psi, v).is_zero(), ErrorKind::NonRationalExponential,
            "exponential of a germ with nonzero base value is not rational; translate the "
            "solution so the germ vanishes at the base point");
    values[static_cast<std::size_t>(F.y_var(v) - 1)] =
        compose(exp0, {values[static_cast<std::size_t>(v - 1)]});
  }

  std::vector<Jet> residuals;
  residuals.reserve(F.components().size());
  for (const auto& p : F.components()) residuals.push_back(p.eval_jets(values, k));
  return residuals;
}

std::vector<std::vector<GaussianRational>> jacobian_at_base(const ImplicitSystem& F,
                                                            const ImplicitSolution& psi_in) {
  const ImplicitSolution& psi = check_shape(F, psi_in);
  std::vector<std::vector<GaussianRational>> m;
  m.reserve(F.components().size());
  for (const auto& p : F.components()) {
    std::vector<GaussianRational> row;
    row.reserve(static_cast<std::size_t>(F.size()));
    for (int j = 1; j <= F.size(); ++j)
      row.push_back(eval_component_at_base(F, psi, system_partial(F, p, F.t_var(j))));
    m.push_back(std::move(row));
  }
  return m;
}

int matrix_rank(std::vector<std::vector<GaussianRational>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[row], m[pivot]);
    for (std::size_t r = row + 1; r < rows; ++r) {
      if (m[r][col].is_zero()) continue;
      GaussianRational factor = m[r][col] / m[row][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= factor * m[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

CheckResult check_solution(const ImplicitSystem& F, const ImplicitSolution& psi, int k) {
  CheckResult out{true, false};
  for (const auto& r : eval_residual(F, psi, k))
    if (!r.is_zero()) out.residual_zero = false;
  auto jac = jacobian_at_base(F, psi);
  out.jacobian_invertible = matrix_rank(std::move(jac)) == F.size();
  return out;
}

SystemPair closure_schwarz(const ImplicitSystem& F, const ImplicitSolution& psi_in) {
  const ImplicitSolution& psi = check_shape(F, psi_in);
  std::vector<Polynomial> comps;
  comps.reserve(F.components().size());
  for (const auto& p : F.components()) {
    Polynomial::CoeffMap m;
    for (const auto& [alpha, v] : p.coeffs()) m.emplace(alpha, v.conj());
    comps.emplace_back(p.dim(), std::move(m));
  }
  std::vector<Jet> jets;
  jets.reserve(psi.unknowns().size());
  for (const auto& j : psi.unknowns()) jets.push_back(schwarz(j));
  return {ImplicitSystem(F.base_dim(), F.size(), std::move(comps)),
          ImplicitSolution(std::move(jets))};
}

namespace {

// Swaps unknown slots s1 and s2 of a system/solution pair (both 1-based),
// so the germ a closure defines can sit in slot 1.
SystemPair swap_unknowns(ImplicitSystem F, ImplicitSolution psi, int s1, int s2) {
  if (s1 == s2) return {std::move(F), std::move(psi)};
  std::vector<int> target = identity_map(F.var_count());
  std::swap(target[static_cast<std::size_t>(F.t_var(s1) - 1)],
            target[static_cast<std::size_t>(F.t_var(s2) - 1)]);
  std::vector<Polynomial> comps;
  comps.reserve(F.components().size());
  for (const auto& p : F.components())
    comps.push_back(remap_component(F, p, F.base_dim(), F.size(), target));
  std::vector<Jet> jets = psi.unknowns();
  std::swap(jets[static_cast<std::size_t>(s1 - 1)], jets[static_cast<std::size_t>(s2 - 1)]);
  return {ImplicitSystem(F.base_dim(), F.size(), std::move(comps)),
          ImplicitSolution(std::move(jets))};
}

}  // namespace

SystemPair closure_compose(const ImplicitSystem& G, const ImplicitSolution& psi_g_in,
                           const ImplicitSystem& F, const ImplicitSolution& psi_f_in) {
  const ImplicitSolution& psi_g = check_shape(G, psi_g_in);
  const ImplicitSolution& psi_f = check_shape(F, psi_f_in);
  const int k = F.base_dim();  // leading G unknowns consumed by the chain
  require(G.size() >= k, ErrorKind::DimensionMismatch,
          "outer system must provide one unknown per chained coordinate");
  std::vector<Jet> chain;
  chain.reserve(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) {
    require(psi_g.unknown(i).value() == psi_f.base()[static_cast<std::size_t>(i - 1)],
            ErrorKind::BaseMismatch,
            "base-point chaining failed: chained germ value differs from the inner base");
    chain.push_back(psi_g.unknown(i));
  }

  const int new_size = G.size() + F.size();
  std::vector<Polynomial> comps;
  comps.reserve(static_cast<std::size_t>(new_size));
  for (const auto& p : G.components())
    comps.push_back(remap_component(G, p, G.base_dim(), new_size, identity_map(G.var_count())));
  // F's germ coordinates are rewired onto G's leading unknown slots.
  std::vector<int> target(static_cast<std::size_t>(F.var_count()));
  for (int i = 1; i <= k; ++i) target[static_cast<std::size_t>(i - 1)] = G.base_dim() + i;
  for (int j = 1; j <= F.size(); ++j)
    target[static_cast<std::size_t>(k + j - 1)] = G.base_dim() + G.size() + j;
  for (const auto& p : F.components())
    comps.push_back(remap_component(F, p, G.base_dim(), new_size, target));

  std::vector<Jet> jets = psi_g.unknowns();
  for (int j = 1; j <= F.size(); ++j) jets.push_back(compose(psi_f.unknown(j), chain));

  SystemPair out{ImplicitSystem(G.base_dim(), new_size, std::move(comps)),
                 ImplicitSolution(std::move(jets))};
  // The defined germ psi_f,1 o chain sits behind G's unknowns; move it first.
  return swap_unknowns(std::move(out.first), std::move(out.second), 1, G.size() + 1);
}

SystemPair closure_derivative(const ImplicitSystem& F, const ImplicitSolution& psi_in,
                              int axis) {
  const ImplicitSolution& psi = check_shape(F, psi_in);
  require(axis >= 1 && axis <= F.base_dim(), ErrorKind::BadArgument,
          "derivative axis out of range");
  require(psi.order() >= 1, ErrorKind::OrderTooLow, "solution jets need order >= 1");
  const int n = F.size();
  const int new_size = 2 * n;
  std::vector<int> embed = identity_map(F.var_count());

  std::vector<Polynomial> comps;
  comps.reserve(static_cast<std::size_t>(new_size));
  for (const auto& p : F.components())
    comps.push_back(remap_component(F, p, F.base_dim(), new_size, embed));
  const int new_poly_dim = 2 * (F.base_dim() + new_size);
  for (const auto& p : F.components()) {
    Polynomial tilde = remap_component(F, system_partial(F, p, F.x_var(axis)), F.base_dim(),
                                       new_size, embed);
    for (int j = 1; j <= n; ++j) {
      Polynomial dj =
          remap_component(F, system_partial(F, p, F.t_var(j)), F.base_dim(), new_size, embed);
      tilde += dj * Polynomial::variable(new_poly_dim, F.base_dim() + n + j);
    }
    comps.push_back(std::move(tilde));
  }

  std::vector<Jet> jets = psi.unknowns();
  for (int j = 1; j <= n; ++j) jets.push_back(partial_derivative(psi.unknown(j), axis));

  SystemPair out{ImplicitSystem(F.base_dim(), new_size, std::move(comps)),
                 ImplicitSolution(std::move(jets))};
  return swap_unknowns(std::move(out.first), std::move(out.second), 1, n + 1);
}

SystemPair closure_implicit(const ImplicitSystem& F, const ImplicitSolution& psi_in) {
  const ImplicitSolution& psi = check_shape(F, psi_in);
  const int d = F.base_dim();
  require(d >= 2, ErrorKind::ImplicitNotApplicable,
          "implicit closure needs base dimension >= 2");
  const Jet& f = psi.unknown(1);
  require(f.value().is_zero(), ErrorKind::ImplicitNotApplicable,
          "implicit closure: defining germ must vanish at the base point");
  require(!f.coeff(MultiIndex::unit(d, d)).is_zero(), ErrorKind::ImplicitNotApplicable,
          "implicit closure: derivative along the last coordinate vanishes at the base");
  const int ko = psi.order();
  const Jet phi = implicit_fn(f.truncated(ko), ko);

  const int n = F.size();
  const int new_size = n + 1;
  // Old x_d becomes the new unknown slot 1; old t_j shifts to slot j+1.
  std::vector<int> target(static_cast<std::size_t>(F.var_count()));
  for (int i = 1; i < d; ++i) target[static_cast<std::size_t>(i - 1)] = i;
  target[static_cast<std::size_t>(d - 1)] = d - 1 + 1;
  for (int j = 1; j <= n; ++j) target[static_cast<std::size_t>(d + j - 1)] = d - 1 + 1 + j;

  std::vector<Polynomial> comps;
  comps.reserve(static_cast<std::size_t>(new_size));
  for (const auto& p : F.components())
    comps.push_back(remap_component(F, p, d - 1, new_size, target));
  comps.push_back(Polynomial::variable(2 * (d - 1 + new_size), d - 1 + 2));

  Point base_out(psi.base().begin(), psi.base().end() - 1);
  std::vector<Jet> sub;
  sub.reserve(static_cast<std::size_t>(d));
  for (int i = 1; i < d; ++i) sub.push_back(Jet::coordinate(d - 1, ko, base_out, i));
  sub.push_back(phi);

  std::vector<Jet> jets;
  jets.reserve(static_cast<std::size_t>(new_size));
  jets.push_back(phi);
  for (int j = 1; j <= n; ++j) jets.push_back(compose(psi.unknown(j).truncated(ko), sub));

  return {ImplicitSystem(d - 1, new_size, std::move(comps)), ImplicitSolution(std::move(jets))};
}

ReducedPair reduce_linear_relation(const ImplicitSystem& F, const ImplicitSolution& psi_in,
                                   const LinearRelation& rel) {
  const ImplicitSolution& psi = check_shape(F, psi_in);
  const int n = F.size();
  require(F.base_dim() == 1, ErrorKind::DimensionMismatch,
          "relation reduction is defined for one-dimensional germs");
  require(n >= 2, ErrorKind::BadArgument,
          "relation must eliminate the last unknown of a system of size >= 2");
  require(rel.d >= 1, ErrorKind::BadArgument, "relation scale d must be >= 1");
  require(static_cast<int>(rel.coeffs.size()) == n, ErrorKind::BadArgument,
          "relation needs coefficients a_0..a_(n-1)");
  require(psi.base()[0].is_zero(), ErrorKind::BadArgument,
          "relation reduction expects germs based at 0");

  // Verify d*psi_n = a_0*z + sum a_i*psi_i + K exactly on the stored jets.
  const int verify_order = psi.order();
  {
    Jet rhs = Jet::constant(1, verify_order, psi.base(), rel.constant);
    Jet zj = Jet::coordinate(1, verify_order, psi.base(), 1);
    rhs = add(rhs, scale(GaussianRational(rel.coeffs[0]), zj));
    for (int i = 1; i < n; ++i)
      rhs = add(rhs, scale(GaussianRational(rel.coeffs[static_cast<std::size_t>(i)]),
                           psi.unknown(i).truncated(verify_order)));
    Jet lhs = scale(GaussianRational(rel.d), psi.unknown(n).truncated(verify_order));
    require(lhs == rhs, ErrorKind::RelationNotSatisfied,
            "the linear relation does not hold on the solution jets");
  }
  const bool k_zero = rel.constant.is_zero();
  require(rel.d == 1 || k_zero, ErrorKind::BadArgument,
          "relation with d > 1 requires a zero constant term");

  const int old_vars = F.var_count();      // 1 + n
  const int new_vars = old_vars - 1;       // 1 + (n-1)
  const int new_poly_dim = 2 * new_vars;
  const GaussianRational d_scale(rel.d);

  // Substituted real variables: x -> d*x, t_i -> d*t_i, and the eliminated
  // slot becomes the defining linear combination.
  std::vector<Polynomial> real_subst;
  real_subst.reserve(static_cast<std::size_t>(old_vars));
  for (int v = 1; v <= new_vars; ++v)
    real_subst.push_back(Polynomial::variable(new_poly_dim, v).scaled(d_scale));
  {
    Polynomial last = Polynomial::constant(new_poly_dim, rel.constant);
    for (int v = 1; v <= new_vars; ++v)
      last += Polynomial::variable(new_poly_dim, v)
                  .scaled(GaussianRational(rel.coeffs[static_cast<std::size_t>(v - 1)]));
    real_subst.push_back(std::move(last));
  }

  std::vector<Polynomial> comps;
  comps.reserve(F.components().size());
  for (const auto& p : F.components()) {
    // Largest power of the eliminated exponential in this component fixes
    // the clearing prefactor that keeps all exponents non-negative.
    const int y_last = F.y_var(old_vars);
    long clear = 0;
    for (const auto& [alpha, c] : p.coeffs())
      clear = std::max(clear, static_cast<long>(alpha[y_last - 1]));
    if (clear > 0)
      require(k_zero, ErrorKind::NonRationalExponential,
              "eliminating an exponentiated unknown needs a zero relation constant");

    Polynomial out(new_poly_dim);
    for (const auto& [alpha, c] : p.coeffs()) {
      // Real part of the monomial, substituted.
      Polynomial term = Polynomial::constant(new_poly_dim, c);
      for (int v = 1; v <= old_vars; ++v)
        if (alpha[v - 1] > 0)
          term = term * real_subst[static_cast<std::size_t>(v - 1)].pow(alpha[v - 1]);
      // Exponential part: e^(d v) = Y_v^d, and the eliminated slot expands
      // into signed powers absorbed by the clearing prefactor.
      std::vector<std::uint32_t> yexp(static_cast<std::size_t>(new_poly_dim), 0);
      const long e_last = static_cast<long>(alpha[y_last - 1]);
      for (int v = 1; v <= new_vars; ++v) {
        long a_v = rel.coeffs[static_cast<std::size_t>(v - 1)];
        long exponent = rel.d * static_cast<long>(alpha[F.y_var(v) - 1]) + e_last * a_v +
                        clear * std::labs(a_v);
        require(exponent >= 0, ErrorKind::NonRationalExponential,
                "internal: exponential exponent stayed negative");
        yexp[static_cast<std::size_t>(new_vars + v - 1)] =
            static_cast<std::uint32_t>(exponent);
      }
      Polynomial::CoeffMap mono;
      mono.emplace(MultiIndex(std::move(yexp)), GaussianRational(1));
      out += term * Polynomial(new_poly_dim, std::move(mono));
    }
    comps.push_back(std::move(out));
  }

  // Rescaled solution psi_i(d z) / d.
  const Jet dz = scale(d_scale, Jet::coordinate(1, psi.order(), psi.base(), 1));
  const GaussianRational inv_d = GaussianRational(1) / d_scale;
  std::vector<Jet> jets;
  jets.reserve(static_cast<std::size_t>(n - 1));
  for (int i = 1; i < n; ++i)
    jets.push_back(scale(inv_d, compose(psi.unknown(i), {dz})));
  ImplicitSolution reduced_psi{jets};

  // Row selection: keep components whose reduced Jacobian rows are linearly
  // independent, lowest row index first. The shape system below only provides
  // the variable layout for derivative evaluation.
  ImplicitSystem layout(1, n - 1,
                        std::vector<Polynomial>(static_cast<std::size_t>(n - 1),
                                                Polynomial(new_poly_dim)));
  std::vector<std::vector<GaussianRational>> m;
  for (const auto& p : comps) {
    std::vector<GaussianRational> row;
    for (int j = 1; j <= n - 1; ++j)
      row.push_back(eval_component_at_base(layout, reduced_psi,
                                           system_partial(layout, p, layout.t_var(j))));
    m.push_back(std::move(row));
  }

  std::vector<int> chosen;
  std::vector<std::vector<GaussianRational>> staged;
  for (int r = 0; r < n && static_cast<int>(chosen.size()) < n - 1; ++r) {
    staged.push_back(m[static_cast<std::size_t>(r)]);
    if (matrix_rank(staged) == static_cast<int>(staged.size()))
      chosen.push_back(r);
    else
      staged.pop_back();
  }
  require(static_cast<int>(chosen.size()) == n - 1, ErrorKind::SingularSystem,
          "no invertible row selection exists for the reduced system");

  std::vector<Polynomial> selected;
  selected.reserve(chosen.size());
  for (int r : chosen) selected.push_back(comps[static_cast<std::size_t>(r)]);
  return ReducedPair{ImplicitSystem(1, n - 1, std::move(selected)), std::move(reduced_psi),
                     verify_order};
}

}  // namespace germcalc
