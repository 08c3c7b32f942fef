#include "germcalc/kernels.hpp"

#include <cstdint>
#include <unordered_map>

#include "germcalc/errors.hpp"

namespace germcalc {
namespace kernels {

namespace {

// Multi-indices pack into one word for dims/orders the engine works at;
// anything larger takes the map-based path.
constexpr int kPackDimLimit = 8;
constexpr int kPackDegreeLimit = 255;

std::uint64_t pack(const MultiIndex& a) {
  std::uint64_t key = 0;
  for (int i = 0; i < a.dim(); ++i) key = (key << 8) | a[i];
  return key;
}

constexpr std::size_t kParallelWorkThreshold = 1 << 15;

Jet dense_mul(const Jet& f, const Jet& g, int k) {
  const int dim = f.dim();
  const std::vector<MultiIndex> idx = multi_indices_up_to(dim, k);

  std::unordered_map<std::uint64_t, std::size_t> pos;
  pos.reserve(idx.size() * 2);
  for (std::size_t p = 0; p < idx.size(); ++p) pos.emplace(pack(idx[p]), p);

  std::vector<GaussianRational> b(idx.size());
  for (const auto& [alpha, v] : g.coeffs())
    if (static_cast<int>(alpha.degree()) <= k) b[pos.at(pack(alpha))] = v;

  std::vector<std::pair<MultiIndex, GaussianRational>> a;
  a.reserve(f.coeff_count());
  for (const auto& [alpha, v] : f.coeffs())
    if (static_cast<int>(alpha.degree()) <= k) a.emplace_back(alpha, v);

  std::vector<GaussianRational> out(idx.size());
  const std::int64_t n = static_cast<std::int64_t>(idx.size());
  const bool big = a.size() * idx.size() >= kParallelWorkThreshold;
  (void)big;
#pragma omp parallel for schedule(dynamic, 16) if (big)
  for (std::int64_t p = 0; p < n; ++p) {
    const MultiIndex& gamma = idx[static_cast<std::size_t>(p)];
    GaussianRational acc;
    for (const auto& [alpha, va] : a) {
      if (!alpha.leq_componentwise(gamma)) continue;
      const GaussianRational& vb = b[pos.at(pack(gamma - alpha))];
      if (vb.is_zero()) continue;
      acc += va * vb;
    }
    out[static_cast<std::size_t>(p)] = std::move(acc);
  }

  Jet::CoeffMap c;
  for (std::size_t p = 0; p < idx.size(); ++p)
    if (!out[p].is_zero()) c.emplace(idx[p], std::move(out[p]));
  return Jet(dim, k, f.base(), std::move(c));
}

Jet map_mul(const Jet& f, const Jet& g, int k) {
  Jet::CoeffMap c;
  for (const auto& [alpha, va] : f.coeffs()) {
    if (static_cast<int>(alpha.degree()) > k) continue;
    for (const auto& [beta, vb] : g.coeffs()) {
      if (static_cast<int>(alpha.degree() + beta.degree()) > k) continue;
      auto [it, inserted] = c.emplace(alpha + beta, va * vb);
      if (!inserted) it->second += va * vb;
    }
  }
  for (auto it = c.begin(); it != c.end();)
    it = it->second.is_zero() ? c.erase(it) : std::next(it);
  return Jet(f.dim(), k, f.base(), std::move(c));
}

}  // namespace

std::size_t mul_work(const Jet& f, const Jet& g) {
  int k = std::min(f.order(), g.order());
  return f.coeff_count() * multi_index_count(f.dim(), k);
}

Jet mul_jets(const Jet& f, const Jet& g) {
  const int k = std::min(f.order(), g.order());
  if (f.dim() > kPackDimLimit || k > kPackDegreeLimit) return map_mul(f, g, k);
  if (f.coeff_count() == 0 || g.coeff_count() == 0) return Jet::zero(f.dim(), k, f.base());
  return dense_mul(f, g, k);
}

}  // namespace kernels

namespace reference {

Jet mul_jets(const Jet& f, const Jet& g) {
  require(f.dim() == g.dim(), ErrorKind::DimensionMismatch, "mul: jet dimensions differ");
  require(points_equal(f.base(), g.base()), ErrorKind::BaseMismatch,
          "mul: jets have different base points");
  const int k = std::min(f.order(), g.order());
  Jet::CoeffMap c;
  for (const auto& [alpha, va] : f.coeffs()) {
    for (const auto& [beta, vb] : g.coeffs()) {
      if (static_cast<int>(alpha.degree() + beta.degree()) > k) continue;
      auto [it, inserted] = c.emplace(alpha + beta, va * vb);
      if (!inserted) it->second += va * vb;
    }
  }
  for (auto it = c.begin(); it != c.end();)
    it = it->second.is_zero() ? c.erase(it) : std::next(it);
  return Jet(f.dim(), k, f.base(), std::move(c));
}

Jet compose_jets(const Jet& f, const std::vector<Jet>& g) {
  require(!g.empty() && f.dim() == static_cast<int>(g.size()), ErrorKind::DimensionMismatch,
          "compose: inner arity must match outer dimension");
  int k = f.order();
  for (const auto& gi : g) k = std::min(k, gi.order());

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

  Jet out = Jet::zero(g[0].dim(), k, g[0].base());
  for (const auto& [alpha, c] : f.coeffs()) {
    if (static_cast<int>(alpha.degree()) > k) continue;
    Jet term = Jet::constant(out.dim(), k, out.base(), c);
    for (int i = 0; i < f.dim(); ++i)
      for (std::uint32_t r = 0; r < alpha[i]; ++r) term = mul_jets(term, w[static_cast<std::size_t>(i)]);
    out = add(out, term);
  }
  return out;
}

}  // namespace reference
}  // namespace germcalc
