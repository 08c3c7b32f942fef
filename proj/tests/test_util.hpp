#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "germcalc/jet.hpp"
#include "germcalc/polynomial.hpp"

namespace testutil {

using germcalc::GaussianRational;
using germcalc::Jet;
using germcalc::MultiIndex;
using germcalc::Point;
using germcalc::Polynomial;

inline GaussianRational gr(const std::string& lit) {
  return GaussianRational::parse_literal(lit);
}

inline MultiIndex mi(std::initializer_list<std::uint32_t> e) {
  return MultiIndex(std::vector<std::uint32_t>(e));
}

inline Point pt(std::initializer_list<const char*> lits) {
  Point p;
  for (const char* l : lits) p.push_back(gr(l));
  return p;
}

struct CoeffSpec {
  std::initializer_list<std::uint32_t> alpha;
  const char* value;
};

inline Jet jet_of(int dim, int order, std::initializer_list<const char*> base,
                  std::initializer_list<CoeffSpec> coeffs) {
  Jet::CoeffMap m;
  for (const auto& c : coeffs) m.emplace(mi(c.alpha), gr(c.value));
  return Jet(dim, order, pt(base), std::move(m));
}

// Independent polynomial re-expansion: substitutes z = base + w by repeated
// naive multiplication, never using the binomial shortcut the library takes.
inline Jet recenter_oracle(const Polynomial& p, const Point& base, int order) {
  const int dim = p.dim();
  std::vector<Polynomial> shifted;
  for (int i = 1; i <= dim; ++i)
    shifted.push_back(Polynomial::constant(dim, base[static_cast<std::size_t>(i - 1)]) +
                      Polynomial::variable(dim, i));
  Polynomial expanded(dim);
  for (const auto& [alpha, c] : p.coeffs()) {
    Polynomial term = Polynomial::constant(dim, c);
    for (int i = 0; i < dim; ++i)
      for (std::uint32_t r = 0; r < alpha[i]; ++r)
        term = term * shifted[static_cast<std::size_t>(i)];
    expanded += term;
  }
  Jet::CoeffMap m;
  for (const auto& [alpha, c] : expanded.coeffs())
    if (static_cast<int>(alpha.degree()) <= order) m.emplace(alpha, c);
  return Jet(dim, order, base, std::move(m));
}

}  // namespace testutil
