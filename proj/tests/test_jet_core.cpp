#include <doctest.h>

#include "germcalc/errors.hpp"
#include "germcalc/jet.hpp"
#include "germcalc/json_io.hpp"
#include "germcalc/polynomial.hpp"
#include "germcalc/random_jet.hpp"
#include "test_util.hpp"

using namespace germcalc;
using namespace testutil;

TEST_CASE("gaussian rational arithmetic is exact and canonical") {
  GaussianRational a = gr("1/2+3/4 i");
  GaussianRational b = gr("-2/6");  // canonicalizes to -1/3
  CHECK(b.re() == mpq_class(-1, 3));
  CHECK((a + b).literal() == "1/6+3/4 i");
  CHECK((a * GaussianRational::i()).literal() == "-3/4+1/2 i");
  CHECK(a.conj().literal() == "1/2-3/4 i");
  CHECK((a / a) == GaussianRational(1));
  CHECK((gr("i") * gr("i")) == GaussianRational(-1));
  CHECK_THROWS_AS(a / GaussianRational(0), CalcError);
}

TEST_CASE("gaussian rational literals round-trip") {
  for (const char* lit : {"0/1", "-3/2", "1/2+3/4 i", "0/1-1/1 i", "5/7+1/1 i"}) {
    GaussianRational v = gr(lit);
    CHECK(v.literal() == lit);
    CHECK(GaussianRational::parse_literal(v.literal()) == v);
  }
  CHECK(gr("i") == GaussianRational(0, 1));
  CHECK(gr("-i") == GaussianRational(0, -1));
  CHECK(gr("3/4i") == GaussianRational(mpq_class(0), mpq_class(3, 4)));
  CHECK_THROWS_AS(gr("1/0"), CalcError);
  CHECK_THROWS_AS(gr("x"), CalcError);
  CHECK_THROWS_AS(gr("1//2"), CalcError);
}

TEST_CASE("multi-index bookkeeping") {
  MultiIndex a = mi({2, 0, 3});
  CHECK(a.degree() == 5);
  CHECK(a.factorial() == 12);  // 2! * 0! * 3!
  CHECK(mi({0, 1}) < mi({2, 0}));   // graded first
  CHECK(mi({0, 2}) < mi({1, 1}));   // lex within a degree
  CHECK(multi_index_count(1, 3) == 4);
  CHECK(multi_index_count(2, 8) == 45);
  auto all = multi_indices_up_to(2, 2);
  CHECK(all.size() == 6);
  CHECK(std::is_sorted(all.begin(), all.end()));
}

TEST_CASE("polynomial re-expansion at a base point") {
  Polynomial z = Polynomial::variable(1, 1);
  SUBCASE("z^2 at 0") {
    Jet j = z.pow(2).to_jet(pt({"0"}), 4);
    CHECK(j == jet_of(1, 4, {"0"}, {{{2}, "1"}}));
  }
  SUBCASE("z^2 at 1") {
    Jet j = z.pow(2).to_jet(pt({"1"}), 2);
    CHECK(j == jet_of(1, 2, {"1"}, {{{0}, "1"}, {{1}, "2"}, {{2}, "1"}}));
  }
  SUBCASE("z1*z2 at (1,1) truncated to order 1") {
    Polynomial p = Polynomial::variable(2, 1) * Polynomial::variable(2, 2);
    Jet j = p.to_jet(pt({"1", "1"}), 1);
    CHECK(j == recenter_oracle(p, pt({"1", "1"}), 1));
    CHECK(j == jet_of(2, 1, {"1", "1"}, {{{0, 0}, "1"}, {{1, 0}, "1"}, {{0, 1}, "1"}}));
  }
  SUBCASE("random degree-5 polynomial at (1,i) matches the expansion oracle") {
    SeededRng rng(7);
    for (int t = 0; t < 10; ++t) {
      Polynomial::CoeffMap m;
      for (const auto& alpha : multi_indices_up_to(2, 5))
        m.emplace(alpha, random_gaussian_rational(rng, 5));
      Polynomial p(2, std::move(m));
      CHECK(p.to_jet(pt({"1", "i"}), 5) == recenter_oracle(p, pt({"1", "i"}), 5));
    }
  }
}

TEST_CASE("jet addition") {
  Jet e3 = exp_jet(3);
  CHECK(add(e3, Jet::zero(1, 3, pt({"0"}))) == e3);
  Jet a = jet_of(1, 2, {"0"}, {{{0}, "1"}, {{1}, "1"}});
  Jet b = jet_of(1, 2, {"0"}, {{{0}, "1"}, {{1}, "-1"}});
  CHECK(add(a, b) == jet_of(1, 2, {"0"}, {{{0}, "2"}}));
  CHECK(add(e3, e3) ==
        jet_of(1, 3, {"0"}, {{{0}, "2"}, {{1}, "2"}, {{2}, "1"}, {{3}, "1/3"}}));
  CHECK_THROWS_AS(add(e3, Jet::zero(1, 3, pt({"1"}))), CalcError);
  CHECK_THROWS_AS(add(e3, Jet::zero(2, 3, pt({"0", "0"}))), CalcError);
}

TEST_CASE("jet multiplication") {
  Jet e3 = exp_jet(3);
  Jet one = Jet::constant(1, 3, pt({"0"}), GaussianRational(1));
  CHECK(mul(e3, one) == e3);
  Jet z = Jet::coordinate(1, 2, pt({"0"}), 1);
  CHECK(mul(z, z) == jet_of(1, 2, {"0"}, {{{2}, "1"}}));
  Jet a = jet_of(1, 2, {"0"}, {{{0}, "1"}, {{1}, "1"}, {{2}, "1/2"}});
  Jet b = jet_of(1, 2, {"0"}, {{{0}, "1"}, {{1}, "-1"}});
  CHECK(mul(a, b) == jet_of(1, 2, {"0"}, {{{0}, "1"}, {{2}, "-1/2"}}));
}

TEST_CASE("partial derivative") {
  CHECK(partial_derivative(exp_jet(4), 1) == exp_jet(3));
  Polynomial p = Polynomial::variable(2, 1) * Polynomial::variable(2, 2);
  Jet j = p.to_jet(pt({"0", "0"}), 3);
  Jet dz1 = partial_derivative(j, 1);
  CHECK(dz1 == jet_of(2, 2, {"0", "0"}, {{{0, 1}, "1"}}));
  SUBCASE("coefficient shift oracle") {
    // f = sum z^n/(n+1)!; f' coefficients must be n*z^(n-1)/(n+1)!.
    Jet::CoeffMap m;
    for (int n = 0; n <= 4; ++n) {
      mpq_class q(1);
      q /= factorial(static_cast<unsigned long>(n + 1));
      m.emplace(mi({static_cast<std::uint32_t>(n)}), GaussianRational(q));
    }
    Jet f(1, 4, pt({"0"}), std::move(m));
    Jet df = partial_derivative(f, 1);
    for (int n = 1; n <= 4; ++n) {
      mpq_class q(n);
      q /= factorial(static_cast<unsigned long>(n + 1));
      CHECK(df.coeff(mi({static_cast<std::uint32_t>(n - 1)})) == GaussianRational(q));
    }
  }
  CHECK_THROWS_AS(partial_derivative(Jet::zero(1, 0, pt({"0"})), 1), CalcError);
}

TEST_CASE("jet tuples carry multi-point derivative data") {
  Jet e = exp_jet(4);
  SUBCASE("single point, order zero") {
    JetTuple t = jet_tuple({e}, 0);
    CHECK(t.entry_count() == 1);
    CHECK(t.derivative(0, mi({0})) == GaussianRational(1));
  }
  SUBCASE("two distinct points at order one") {
    Jet other = jet_of(1, 3, {"1"}, {{{0}, "2"}, {{1}, "1/3"}});
    JetTuple t = jet_tuple({e, other}, 1);
    CHECK(t.entry_count() == 2 * (1 + 1));
    CHECK(t.derivative(1, mi({1})) == gr("1/3"));  // c_1 * 1!
  }
  SUBCASE("the exponential germ exists only at 0, so multi-point tuples of it are rejected") {
    CHECK_THROWS_AS(jet_tuple({e, exp_jet(4)}, 1), CalcError);
  }
  SUBCASE("insufficient order") {
    CHECK_THROWS_AS(jet_tuple({e}, 5), CalcError);
  }
}

TEST_CASE("equality to a given order") {
  Jet e = exp_jet(5);
  CHECK(equal_to_order(e, e, 5));
  // (e^z - 1)/z has value 1 like exp, but first coefficient 1/2.
  Jet::CoeffMap m;
  for (int n = 0; n <= 4; ++n) {
    mpq_class q(1);
    q /= factorial(static_cast<unsigned long>(n + 1));
    m.emplace(mi({static_cast<std::uint32_t>(n)}), GaussianRational(q));
  }
  Jet expm1_over_z(1, 4, pt({"0"}), std::move(m));
  CHECK(equal_to_order(e, expm1_over_z, 0));
  CHECK(!equal_to_order(e, expm1_over_z, 1));
  CHECK_THROWS_AS(equal_to_order(e, expm1_over_z, 5), CalcError);

  SUBCASE("equivalence relation at fixed order") {
    SeededRng rng(11);
    Jet a = generate_random_jet(2, 4, 100, 5);
    // b agrees with a to order 2, c agrees with b to order 2.
    Jet b = a.with_coeff(mi({0, 3}), random_gaussian_rational(rng, 5));
    Jet c = b.with_coeff(mi({3, 0}), random_gaussian_rational(rng, 5));
    CHECK(equal_to_order(a, a, 2));
    CHECK(equal_to_order(a, b, 2) == equal_to_order(b, a, 2));
    CHECK((equal_to_order(a, b, 2) && equal_to_order(b, c, 2)) == equal_to_order(a, c, 2));
  }
}

TEST_CASE("truncated evaluation") {
  Jet e = exp_jet(4);
  CHECK(evaluate_truncated(e, pt({"0"})) == GaussianRational(1));
  Jet one_plus_z = jet_of(1, 1, {"0"}, {{{0}, "1"}, {{1}, "1"}});
  CHECK(evaluate_truncated(one_plus_z, pt({"i"})) == gr("1/1+1/1 i"));
  CHECK(evaluate_truncated(e, pt({"1"})) == gr("65/24"));
  CHECK_THROWS_AS(evaluate_truncated(e, pt({"0", "0"})), CalcError);
}

TEST_CASE("ring laws hold exactly on random jets") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    int dim = 1 + static_cast<int>(seed % 3);
    Jet a = generate_random_jet(dim, 8, seed * 10 + 1, 6);
    Jet b = generate_random_jet(dim, 8, seed * 10 + 2, 6);
    Jet c = generate_random_jet(dim, 8, seed * 10 + 3, 6);
    CHECK(add(a, b) == add(b, a));
    CHECK(mul(a, b) == mul(b, a));
    CHECK(add(add(a, b), c) == add(a, add(b, c)));
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
    CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
    // Leibniz rule one order down.
    for (int axis = 1; axis <= dim; ++axis) {
      Jet lhs = partial_derivative(mul(a, b), axis);
      Jet rhs = add(mul(partial_derivative(a, axis), b.truncated(7)),
                    mul(a.truncated(7), partial_derivative(b, axis)));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("re-expansion evaluates like the original polynomial") {
  SeededRng rng(23);
  for (int t = 0; t < 8; ++t) {
    Polynomial::CoeffMap m;
    for (const auto& alpha : multi_indices_up_to(2, 4))
      m.emplace(alpha, random_gaussian_rational(rng, 4));
    Polynomial p(2, std::move(m));
    Point base{random_gaussian_rational(rng, 3), random_gaussian_rational(rng, 3)};
    Jet j = p.to_jet(base, 4);  // order >= degree, so the jet is the polynomial
    Point probe{random_gaussian_rational(rng, 3), random_gaussian_rational(rng, 3)};
    CHECK(evaluate_truncated(j, probe) == p.eval(probe));
  }
}

TEST_CASE("jet JSON round-trips are byte-exact") {
  Jet j = jet_of(2, 3, {"1/2", "0/1-1/1 i"},
                 {{{1, 0}, "2/3"}, {{0, 2}, "0/1+7/5 i"}, {{1, 2}, "-1"}});
  json doc = jet_to_json(j);
  std::string text = canonical_dump(doc);
  Jet back = jet_from_json(parse_json_text(text));
  CHECK(back == j);
  CHECK(canonical_dump(jet_to_json(back)) == text);
  SUBCASE("documents with junk are rejected") {
    CHECK_THROWS_AS(jet_from_json(parse_json_text("{\"dim\":1}")), CalcError);
    CHECK_THROWS_AS(parse_json_text("{nope"), CalcError);
  }
}
