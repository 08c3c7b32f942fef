#include "germcalc/jet.hpp"

#include <utility>

#include "germcalc/errors.hpp"
#include "germcalc/kernels.hpp"

namespace germcalc {

bool points_equal(const Point& a, const Point& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

Point conj(const Point& a) {
  Point out;
  out.reserve(a.size());
  for (const auto& v : a) out.push_back(v.conj());
  return out;
}

Jet::Jet(int dim, int order, Point base, CoeffMap coeffs)
    : dim_(dim), order_(order), base_(std::move(base)), coeffs_(std::move(coeffs)) {
  require(dim_ >= 1, ErrorKind::DimensionMismatch, "jet dimension must be positive");
  require(order_ >= 0, ErrorKind::OrderTooLow, "jet order must be non-negative");
  require(static_cast<int>(base_.size()) == dim_, ErrorKind::DimensionMismatch,
          "base point dimension does not match jet dimension");
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    require(it->first.dim() == dim_, ErrorKind::DimensionMismatch,
            "coefficient multi-index dimension mismatch at " + it->first.to_string());
    require(static_cast<int>(it->first.degree()) <= order_, ErrorKind::OrderTooLow,
            "coefficient " + it->first.to_string() + " exceeds jet order");
    if (it->second.is_zero())
      it = coeffs_.erase(it);
    else
      ++it;
  }
}

Jet Jet::zero(int dim, int order, Point base) {
  return Jet(dim, order, std::move(base), {});
}

Jet Jet::constant(int dim, int order, Point base, const GaussianRational& value) {
  CoeffMap c;
  if (!value.is_zero()) c.emplace(MultiIndex::zero(dim), value);
  return Jet(dim, order, std::move(base), std::move(c));
}

Jet Jet::coordinate(int dim, int order, Point base, int axis) {
  require(axis >= 1 && axis <= dim, ErrorKind::BadArgument, "coordinate axis out of range");
  require(order >= 1, ErrorKind::OrderTooLow, "coordinate jet needs order >= 1");
  CoeffMap c;
  const GaussianRational& a = base[static_cast<std::size_t>(axis - 1)];
  if (!a.is_zero()) c.emplace(MultiIndex::zero(dim), a);
  c.emplace(MultiIndex::unit(dim, axis), GaussianRational(1));
  return Jet(dim, order, std::move(base), std::move(c));
}

const GaussianRational& Jet::coeff(const MultiIndex& alpha) const {
  static const GaussianRational kZero;
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? kZero : it->second;
}

Jet Jet::truncated(int k) const {
  require(k >= 0 && k <= order_, ErrorKind::OrderTooLow,
          "cannot read a jet of order " + std::to_string(order_) + " at order " +
              std::to_string(k));
  CoeffMap c;
  for (const auto& [alpha, v] : coeffs_)
    if (static_cast<int>(alpha.degree()) <= k) c.emplace(alpha, v);
  return Jet(dim_, k, base_, std::move(c));
}

Jet Jet::with_coeff(const MultiIndex& alpha, const GaussianRational& value) const {
  CoeffMap c = coeffs_;
  if (value.is_zero())
    c.erase(alpha);
  else
    c[alpha] = value;
  return Jet(dim_, order_, base_, std::move(c));
}

bool Jet::operator==(const Jet& o) const {
  return dim_ == o.dim_ && order_ == o.order_ && points_equal(base_, o.base_) &&
         coeffs_ == o.coeffs_;
}

namespace {

void check_frames(const Jet& f, const Jet& g, const char* op) {
  require(f.dim() == g.dim(), ErrorKind::DimensionMismatch,
          std::string(op) + ": jet dimensions differ");
  require(points_equal(f.base(), g.base()), ErrorKind::BaseMismatch,
          std::string(op) + ": jets have different base points");
}

}  // namespace

Jet add(const Jet& f, const Jet& g) {
  check_frames(f, g, "add");
  int k = std::min(f.order(), g.order());
  Jet::CoeffMap c;
  for (const auto& [alpha, v] : f.coeffs())
    if (static_cast<int>(alpha.degree()) <= k) c.emplace(alpha, v);
  for (const auto& [alpha, v] : g.coeffs()) {
    if (static_cast<int>(alpha.degree()) > k) continue;
    auto [it, inserted] = c.emplace(alpha, v);
    if (!inserted) it->second += v;
  }
  return Jet(f.dim(), k, f.base(), std::move(c));
}

Jet sub(const Jet& f, const Jet& g) { return add(f, negate(g)); }

Jet negate(const Jet& f) {
  Jet::CoeffMap c;
  for (const auto& [alpha, v] : f.coeffs()) c.emplace(alpha, -v);
  return Jet(f.dim(), f.order(), f.base(), std::move(c));
}

Jet scale(const GaussianRational& s, const Jet& f) {
  if (s.is_zero()) return Jet::zero(f.dim(), f.order(), f.base());
  Jet::CoeffMap c;
  for (const auto& [alpha, v] : f.coeffs()) c.emplace(alpha, s * v);
  return Jet(f.dim(), f.order(), f.base(), std::move(c));
}

Jet mul(const Jet& f, const Jet& g) {
  check_frames(f, g, "mul");
  return kernels::mul_jets(f, g);
}

Jet partial_derivative(const Jet& f, int axis) {
  require(axis >= 1 && axis <= f.dim(), ErrorKind::BadArgument, "derivative axis out of range");
  require(f.order() >= 1, ErrorKind::OrderTooLow,
          "cannot differentiate a jet of order 0");
  Jet::CoeffMap c;
  for (const auto& [alpha, v] : f.coeffs()) {
    std::uint32_t e = alpha[axis - 1];
    if (e == 0) continue;
    // Coefficient rule: (d/dz_axis f)_alpha = (alpha_axis + 1) * c_{alpha + e_axis},
    // read here from the source side.
    c.emplace(alpha.minus(axis), GaussianRational(mpq_class(static_cast<long>(e))) * v);
  }
  return Jet(f.dim(), f.order() - 1, f.base(), std::move(c));
}

GaussianRational evaluate_truncated(const Jet& f, const Point& p) {
  require(static_cast<int>(p.size()) == f.dim(), ErrorKind::DimensionMismatch,
          "evaluation point dimension mismatch");
  Point d;
  d.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) d.push_back(p[i] - f.base()[i]);
  GaussianRational out;
  for (const auto& [alpha, v] : f.coeffs()) {
    GaussianRational term = v;
    for (int i = 0; i < f.dim(); ++i)
      if (alpha[i] > 0) term *= d[static_cast<std::size_t>(i)].pow(alpha[i]);
    out += term;
  }
  return out;
}

bool equal_to_order(const Jet& f, const Jet& g, int k) {
  check_frames(f, g, "equal_to_order");
  require(k >= 0 && k <= f.order() && k <= g.order(), ErrorKind::OrderTooLow,
          "comparison order exceeds a jet order");
  auto within = [k](const MultiIndex& a) { return static_cast<int>(a.degree()) <= k; };
  for (const auto& [alpha, v] : f.coeffs())
    if (within(alpha) && g.coeff(alpha) != v) return false;
  for (const auto& [alpha, v] : g.coeffs())
    if (within(alpha) && f.coeff(alpha) != v) return false;
  return true;
}

Jet jet_pow(const Jet& f, unsigned long e, int order) {
  require(f.order() >= order, ErrorKind::OrderTooLow, "jet_pow: insufficient order");
  Jet acc = Jet::constant(f.dim(), order, f.base(), GaussianRational(1));
  Jet b = f.truncated(order);
  while (e > 0) {
    if (e & 1) acc = mul(acc, b);
    if (e >>= 1) b = mul(b, b);
  }
  return acc;
}

Jet exp_jet(int order) {
  Jet::CoeffMap c;
  for (int n = 0; n <= order; ++n) {
    mpq_class q(1);
    q /= factorial(static_cast<unsigned long>(n));
    c.emplace(MultiIndex({static_cast<std::uint32_t>(n)}), GaussianRational(q));
  }
  return Jet(1, order, {GaussianRational(0)}, std::move(c));
}

Jet alt_geometric_jet(int order) {
  Jet::CoeffMap c;
  for (int n = 0; 2 * n <= order; ++n) {
    c.emplace(MultiIndex({static_cast<std::uint32_t>(2 * n)}),
              GaussianRational(n % 2 == 0 ? 1 : -1));
  }
  return Jet(1, order, {GaussianRational(0)}, std::move(c));
}

JetTuple::JetTuple(std::vector<Jet> jets, int order) : jets_(std::move(jets)), order_(order) {}

GaussianRational JetTuple::derivative(std::size_t i, const MultiIndex& alpha) const {
  require(i < jets_.size(), ErrorKind::BadArgument, "jet tuple index out of range");
  require(static_cast<int>(alpha.degree()) <= order_, ErrorKind::OrderTooLow,
          "derivative order exceeds tuple order");
  return jets_[i].coeff(alpha) * GaussianRational(mpq_class(alpha.factorial()));
}

std::size_t JetTuple::entry_count() const {
  if (jets_.empty()) return 0;
  return jets_.size() * multi_index_count(jets_[0].dim(), order_);
}

JetTuple jet_tuple(const std::vector<Jet>& jets, int order) {
  require(!jets.empty(), ErrorKind::BadArgument, "jet tuple needs at least one jet");
  const int dim = jets[0].dim();
  std::vector<Jet> packed;
  packed.reserve(jets.size());
  for (const auto& j : jets) {
    require(j.dim() == dim, ErrorKind::DimensionMismatch, "jet tuple dimensions differ");
    require(j.order() >= order, ErrorKind::OrderTooLow,
            "jet order insufficient for requested tuple order");
    packed.push_back(j.truncated(order));
  }
  for (std::size_t i = 0; i < jets.size(); ++i)
    for (std::size_t j = i + 1; j < jets.size(); ++j)
      require(!points_equal(jets[i].base(), jets[j].base()), ErrorKind::DuplicateBasePoints,
              "jet tuple base points must be pairwise distinct");
  return JetTuple(std::move(packed), order);
}

}  // namespace germcalc
