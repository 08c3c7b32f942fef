#include "germcalc/blowup.hpp"

#include <cctype>

#include "germcalc/errors.hpp"
#include "germcalc/operators.hpp"
#include "germcalc/polynomial.hpp"

namespace germcalc {

std::string Chart::label() const { return infinite ? "inf" : lambda.literal(); }

Chart Chart::parse(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t == "inf" || t == "infinity" || t == "oo") return infinity();
  return at(GaussianRational::parse_literal(text));
}

namespace {

void check_origin_jet(const Jet& f, const char* what) {
  require(f.dim() == 2, ErrorKind::DimensionMismatch,
          std::string(what) + ": expected a two-dimensional jet");
  require(f.base()[0].is_zero() && f.base()[1].is_zero(), ErrorKind::BaseMismatch,
          std::string(what) + ": expected a jet based at the origin");
}

Point origin2() { return Point{GaussianRational(0), GaussianRational(0)}; }

}  // namespace

Jet blow_up_jet(const Jet& f, const Chart& chart, int k_out) {
  check_origin_jet(f, "blow_up_jet");
  require(f.order() >= k_out, ErrorKind::OrderTooLow,
          "blow_up_jet: input order below the requested output order");
  Polynomial z1 = Polynomial::variable(2, 1);
  Polynomial z2 = Polynomial::variable(2, 2);
  Polynomial p1(2), p2(2);
  if (chart.infinite) {
    p1 = z1 * z2;
    p2 = z2;
  } else {
    p1 = z1;
    p2 = (Polynomial::constant(2, chart.lambda) + z2) * z1;
  }
  std::vector<Jet> inner{p1.to_jet(origin2(), k_out), p2.to_jet(origin2(), k_out)};
  return compose(f.truncated(k_out), inner);
}

Jet blow_down_reconstruct(const Jet& g, int k) {
  return reconstruct_from_chart(g, Chart::at(GaussianRational(0)), k);
}

Jet reconstruct_from_chart(const Jet& g, const Chart& chart, int k) {
  check_origin_jet(g, "reconstruct_from_chart");
  require(k >= 0 && g.order() >= 2 * k, ErrorKind::OrderTooLow,
          "reconstruction to order k needs a chart jet of order 2k");

  Jet::CoeffMap c;
  if (chart.infinite) {
    // g = sum c_ij z1^i z2^(i+j): support needs z2-degree >= z1-degree.
    for (const auto& [alpha, v] : g.coeffs())
      if (alpha[1] < alpha[0])
        fail(ErrorKind::NotABlowDown,
             "coefficient at " + alpha.to_string() + " violates the blow-up support condition");
    for (int i = 0; i <= k; ++i)
      for (int j = 0; i + j <= k; ++j) {
        const GaussianRational& v = g.coeff(MultiIndex(
            {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i + j)}));
        if (!v.is_zero())
          c.emplace(MultiIndex({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)}),
                    v);
      }
    return Jet(2, k, origin2(), std::move(c));
  }

  // Finite chart: g_{p,t} = sum_j c_{p-j,j} C(j,t) lambda^(j-t). For each
  // z1-degree p this is a unit upper-triangular system in t <= j <= p, so
  // c_{p-j,j} = sum_t C(t,j) (-lambda)^(t-j) g_{p,t}.
  for (const auto& [alpha, v] : g.coeffs())
    if (alpha[1] > alpha[0])
      fail(ErrorKind::NotABlowDown,
           "coefficient at " + alpha.to_string() + " violates the blow-up support condition");
  const GaussianRational neg_lambda = -chart.lambda;
  for (int p = 0; p <= k; ++p) {
    for (int j = 0; j <= p; ++j) {
      GaussianRational acc;
      for (int t = j; t <= p; ++t) {
        const GaussianRational& gv = g.coeff(
            MultiIndex({static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(t)}));
        if (gv.is_zero()) continue;
        acc += GaussianRational(mpq_binomial(static_cast<unsigned long>(t),
                                             static_cast<unsigned long>(j))) *
               neg_lambda.pow(static_cast<unsigned long>(t - j)) * gv;
      }
      if (!acc.is_zero())
        c.emplace(MultiIndex({static_cast<std::uint32_t>(p - j), static_cast<std::uint32_t>(j)}),
                  std::move(acc));
    }
  }
  return Jet(2, k, origin2(), std::move(c));
}

bool chart_transition_check(const Jet& f, const Chart& c1, const Chart& c2, int k) {
  require(f.order() >= 2 * k, ErrorKind::OrderTooLow,
          "transition check to order k needs order 2k upstairs");
  Jet g1 = blow_up_jet(f, c1, 2 * k);
  Jet g2 = blow_up_jet(f, c2, 2 * k);
  return charts_consistent(g1, c1, g2, c2, k);
}

bool charts_consistent(const Jet& g1, const Chart& c1, const Jet& g2, const Chart& c2, int k) {
  try {
    return reconstruct_from_chart(g1, c1, k) == reconstruct_from_chart(g2, c2, k);
  } catch (const CalcError& e) {
    if (e.kind() == ErrorKind::NotABlowDown) return false;
    throw;
  }
}

bool divisor_constancy_check(const Jet& g) {
  return divisor_constancy_check(g, Chart::at(GaussianRational(0)));
}

bool divisor_constancy_check(const Jet& g, const Chart& chart) {
  check_origin_jet(g, "divisor_constancy_check");
  // In finite charts the exceptional curve is z1 = 0; in the infinite chart
  // it is z2 = 0. Constancy along it means no pure power of the other
  // variable survives.
  const int along = chart.infinite ? 0 : 1;
  for (const auto& [alpha, v] : g.coeffs())
    if (alpha[chart.infinite ? 1 : 0] == 0 && alpha[along] >= 1) return false;
  return true;
}

}  // namespace germcalc
