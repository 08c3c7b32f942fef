#include "germcalc/polynomial.hpp"

#include <algorithm>

#include "germcalc/errors.hpp"

namespace germcalc {

Polynomial::Polynomial(int dim) : dim_(dim) {
  require(dim_ >= 1, ErrorKind::DimensionMismatch, "polynomial dimension must be positive");
}

Polynomial::Polynomial(int dim, CoeffMap coeffs) : dim_(dim), coeffs_(std::move(coeffs)) {
  require(dim_ >= 1, ErrorKind::DimensionMismatch, "polynomial dimension must be positive");
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    require(it->first.dim() == dim_, ErrorKind::DimensionMismatch,
            "monomial dimension mismatch at " + it->first.to_string());
    it = it->second.is_zero() ? coeffs_.erase(it) : std::next(it);
  }
}

Polynomial Polynomial::constant(int dim, const GaussianRational& c) {
  CoeffMap m;
  if (!c.is_zero()) m.emplace(MultiIndex::zero(dim), c);
  return Polynomial(dim, std::move(m));
}

Polynomial Polynomial::variable(int dim, int axis) {
  CoeffMap m;
  m.emplace(MultiIndex::unit(dim, axis), GaussianRational(1));
  return Polynomial(dim, std::move(m));
}

std::uint32_t Polynomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& [alpha, v] : coeffs_) d = std::max(d, alpha.degree());
  return d;
}

const GaussianRational& Polynomial::coeff(const MultiIndex& alpha) const {
  static const GaussianRational kZero;
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? kZero : it->second;
}

Polynomial Polynomial::operator-() const {
  CoeffMap m;
  for (const auto& [alpha, v] : coeffs_) m.emplace(alpha, -v);
  return Polynomial(dim_, std::move(m));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require(dim_ == o.dim_, ErrorKind::DimensionMismatch, "polynomial dimension mismatch");
  for (const auto& [alpha, v] : o.coeffs_) {
    auto [it, inserted] = coeffs_.emplace(alpha, v);
    if (!inserted) {
      it->second += v;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require(a.dim_ == b.dim_, ErrorKind::DimensionMismatch, "polynomial dimension mismatch");
  Polynomial::CoeffMap m;
  for (const auto& [alpha, va] : a.coeffs_)
    for (const auto& [beta, vb] : b.coeffs_) {
      auto [it, inserted] = m.emplace(alpha + beta, va * vb);
      if (!inserted) it->second += va * vb;
    }
  return Polynomial(a.dim_, std::move(m));
}

Polynomial Polynomial::scaled(const GaussianRational& c) const {
  CoeffMap m;
  if (!c.is_zero())
    for (const auto& [alpha, v] : coeffs_) m.emplace(alpha, c * v);
  return Polynomial(dim_, std::move(m));
}

Polynomial Polynomial::pow(unsigned long e) const {
  Polynomial acc = constant(dim_, GaussianRational(1));
  Polynomial b = *this;
  while (e > 0) {
    if (e & 1) acc = acc * b;
    if (e >>= 1) b = b * b;
  }
  return acc;
}

GaussianRational Polynomial::eval(const Point& p) const {
  require(static_cast<int>(p.size()) == dim_, ErrorKind::DimensionMismatch,
          "evaluation point dimension mismatch");
  GaussianRational out;
  for (const auto& [alpha, v] : coeffs_) {
    GaussianRational term = v;
    for (int i = 0; i < dim_; ++i)
      if (alpha[i] > 0) term *= p[static_cast<std::size_t>(i)].pow(alpha[i]);
    out += term;
  }
  return out;
}

Jet Polynomial::eval_jets(const std::vector<Jet>& values, int order) const {
  require(static_cast<int>(values.size()) == dim_, ErrorKind::DimensionMismatch,
          "substitution arity mismatch");
  for (const auto& v : values)
    require(v.same_frame(values[0]), ErrorKind::BaseMismatch,
            "substituted jets must share one frame");

  // Monomial products are built incrementally: w^alpha = w^(alpha - e_j) * w_j.
  std::map<MultiIndex, Jet> memo;
  std::vector<Jet> vals;
  vals.reserve(values.size());
  for (const auto& v : values) {
    require(v.order() >= order, ErrorKind::OrderTooLow,
            "substituted jet order is below the requested output order");
    vals.push_back(v.truncated(order));
  }
  const Jet one = Jet::constant(vals[0].dim(), order, vals[0].base(), GaussianRational(1));
  memo.emplace(MultiIndex::zero(dim_), one);

  auto power = [&](auto&& self, const MultiIndex& alpha) -> const Jet& {
    auto it = memo.find(alpha);
    if (it != memo.end()) return it->second;
    int axis = 0;
    for (int i = dim_; i >= 1; --i)
      if (alpha[i - 1] > 0) {
        axis = i;
        break;
      }
    const Jet& prev = self(self, alpha.minus(axis));
    Jet cur = mul(prev, vals[static_cast<std::size_t>(axis - 1)]);
    return memo.emplace(alpha, std::move(cur)).first->second;
  };

  Jet out = Jet::zero(vals[0].dim(), order, vals[0].base());
  for (const auto& [alpha, c] : coeffs_) out = add(out, scale(c, power(power, alpha)));
  return out;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& values) const {
  require(static_cast<int>(values.size()) == dim_, ErrorKind::DimensionMismatch,
          "substitution arity mismatch");
  const int out_dim = values[0].dim();
  for (const auto& v : values)
    require(v.dim() == out_dim, ErrorKind::DimensionMismatch,
            "substituted polynomials must share one variable set");
  Polynomial out(out_dim);
  for (const auto& [alpha, c] : coeffs_) {
    Polynomial term = constant(out_dim, c);
    for (int i = 0; i < dim_; ++i)
      if (alpha[i] > 0) term = term * values[static_cast<std::size_t>(i)].pow(alpha[i]);
    out += term;
  }
  return out;
}

Polynomial Polynomial::partial(int axis) const {
  require(axis >= 1 && axis <= dim_, ErrorKind::BadArgument, "derivative axis out of range");
  CoeffMap m;
  for (const auto& [alpha, v] : coeffs_) {
    std::uint32_t e = alpha[axis - 1];
    if (e == 0) continue;
    m.emplace(alpha.minus(axis), GaussianRational(mpq_class(static_cast<long>(e))) * v);
  }
  return Polynomial(dim_, std::move(m));
}

bool Polynomial::uses_variable(int axis) const {
  for (const auto& [alpha, v] : coeffs_)
    if (alpha[axis - 1] > 0) return true;
  return false;
}

Polynomial Polynomial::remap_variables(int new_dim, const std::vector<int>& var_map) const {
  require(static_cast<int>(var_map.size()) == dim_, ErrorKind::BadArgument,
          "variable map arity mismatch");
  CoeffMap m;
  for (const auto& [alpha, v] : coeffs_) {
    std::vector<std::uint32_t> e(static_cast<std::size_t>(new_dim), 0);
    for (int i = 0; i < dim_; ++i) {
      if (alpha[i] == 0) continue;
      int target = var_map[static_cast<std::size_t>(i)];
      require(target >= 1 && target <= new_dim, ErrorKind::BadArgument,
              "variable map target out of range");
      e[static_cast<std::size_t>(target - 1)] += alpha[i];
    }
    auto [it, inserted] = m.emplace(MultiIndex(std::move(e)), v);
    if (!inserted) it->second += v;
  }
  return Polynomial(new_dim, std::move(m));
}

Jet Polynomial::to_jet(const Point& base, int order) const {
  require(static_cast<int>(base.size()) == dim_, ErrorKind::DimensionMismatch,
          "base point dimension mismatch");
  require(order >= 0, ErrorKind::OrderTooLow, "jet order must be non-negative");
  // c_alpha = sum over beta >= alpha of p_beta * prod C(beta_i, alpha_i) * base^(beta-alpha).
  Jet::CoeffMap c;
  for (const auto& [beta, p] : coeffs_) {
    std::vector<std::uint32_t> alpha(static_cast<std::size_t>(dim_), 0);
    auto rec = [&](auto&& self, int pos, GaussianRational factor) -> void {
      if (pos == dim_) {
        MultiIndex a{alpha};
        if (static_cast<int>(a.degree()) > order) return;
        auto [it, inserted] = c.emplace(a, factor);
        if (!inserted) it->second += factor;
        return;
      }
      for (std::uint32_t v = 0; v <= beta[pos]; ++v) {
        alpha[static_cast<std::size_t>(pos)] = v;
        GaussianRational f =
            factor * GaussianRational(mpq_binomial(beta[pos], v)) *
            base[static_cast<std::size_t>(pos)].pow(beta[pos] - v);
        self(self, pos + 1, std::move(f));
      }
    };
    rec(rec, 0, p);
  }
  return Jet(dim_, order, base, std::move(c));
}

std::string Polynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (const auto& [alpha, v] : coeffs_) {
    if (!out.empty()) out += " + ";
    out += "(" + v.literal() + ")";
    for (int i = 0; i < dim_; ++i) {
      if (alpha[i] == 0) continue;
      out += "*z" + std::to_string(i + 1);
      if (alpha[i] > 1) out += "^" + std::to_string(alpha[i]);
    }
  }
  return out;
}

}  // namespace germcalc
