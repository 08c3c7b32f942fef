#include "germcalc/multi_index.hpp"

#include <algorithm>
#include <numeric>

#include "germcalc/errors.hpp"

namespace germcalc {

MultiIndex::MultiIndex(std::vector<std::uint32_t> entries) : e_(std::move(entries)) {
  require(!e_.empty(), ErrorKind::DimensionMismatch, "multi-index must have positive dimension");
}

MultiIndex MultiIndex::zero(int dim) {
  require(dim >= 1, ErrorKind::DimensionMismatch, "multi-index must have positive dimension");
  return MultiIndex(std::vector<std::uint32_t>(static_cast<std::size_t>(dim), 0));
}

MultiIndex MultiIndex::unit(int dim, int axis) {
  MultiIndex m = zero(dim);
  require(axis >= 1 && axis <= dim, ErrorKind::BadArgument, "axis out of range");
  m.e_[static_cast<std::size_t>(axis - 1)] = 1;
  return m;
}

std::uint32_t MultiIndex::degree() const {
  return std::accumulate(e_.begin(), e_.end(), std::uint32_t{0});
}

mpz_class MultiIndex::factorial() const {
  mpz_class out = 1;
  for (auto v : e_) out *= germcalc::factorial(v);
  return out;
}

bool MultiIndex::leq_componentwise(const MultiIndex& o) const {
  if (dim() != o.dim()) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

MultiIndex MultiIndex::plus(int axis) const {
  require(axis >= 1 && axis <= dim(), ErrorKind::BadArgument, "axis out of range");
  MultiIndex m = *this;
  ++m.e_[static_cast<std::size_t>(axis - 1)];
  return m;
}

MultiIndex MultiIndex::minus(int axis) const {
  require(axis >= 1 && axis <= dim(), ErrorKind::BadArgument, "axis out of range");
  require(e_[static_cast<std::size_t>(axis - 1)] >= 1, ErrorKind::BadArgument,
          "multi-index component underflow");
  MultiIndex m = *this;
  --m.e_[static_cast<std::size_t>(axis - 1)];
  return m;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  require(dim() == o.dim(), ErrorKind::DimensionMismatch, "multi-index dimension mismatch");
  MultiIndex m = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] += o.e_[i];
  return m;
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
  require(o.leq_componentwise(*this), ErrorKind::BadArgument, "multi-index subtraction underflow");
  MultiIndex m = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] -= o.e_[i];
  return m;
}

bool MultiIndex::operator<(const MultiIndex& o) const {
  if (dim() != o.dim()) return dim() < o.dim();
  std::uint32_t da = degree(), db = o.degree();
  if (da != db) return da < db;
  return e_ < o.e_;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e_[i]);
  }
  return s + ")";
}

mpz_class factorial(unsigned long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

mpq_class mpq_binomial(unsigned long n, unsigned long k) {
  return mpq_class(binomial(n, k));
}

std::uint64_t multi_index_count(int dim, int order) {
  mpz_class c = binomial(static_cast<unsigned long>(order + dim), static_cast<unsigned long>(dim));
  return c.get_ui();
}

std::vector<MultiIndex> multi_indices_up_to(int dim, int order) {
  require(dim >= 1 && order >= 0, ErrorKind::BadArgument, "bad enumeration bounds");
  std::vector<MultiIndex> out;
  out.reserve(multi_index_count(dim, order));
  std::vector<std::uint32_t> cur(static_cast<std::size_t>(dim), 0);
  // Graded enumeration: degrees 0..order, lexicographic within a degree.
  for (int deg = 0; deg <= order; ++deg) {
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
      if (pos == dim - 1) {
        cur[static_cast<std::size_t>(pos)] = static_cast<std::uint32_t>(remaining);
        out.push_back(MultiIndex(cur));
        return;
      }
      for (int v = 0; v <= remaining; ++v) {
        cur[static_cast<std::size_t>(pos)] = static_cast<std::uint32_t>(v);
        self(self, pos + 1, remaining - v);
      }
    };
    rec(rec, 0, deg);
  }
  return out;
}

}  // namespace germcalc
