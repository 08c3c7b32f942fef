#include <doctest.h>

#include "germcalc/errors.hpp"
#include "germcalc/operators.hpp"
#include "germcalc/random_jet.hpp"
#include "test_util.hpp"

using namespace germcalc;
using namespace testutil;

TEST_CASE("schwarz reflection conjugates base and coefficients") {
  Jet iz = jet_of(1, 1, {"0"}, {{{1}, "i"}});
  CHECK(schwarz(iz) == jet_of(1, 1, {"0"}, {{{1}, "-i"}}));

  Jet real = jet_of(1, 2, {"1"}, {{{0}, "2"}, {{2}, "-1/3"}});
  CHECK(schwarz(real) == real);

  Jet f = jet_of(1, 1, {"i"}, {{{0}, "1/1+1/1 i"}, {{1}, "i"}});
  CHECK(schwarz(f) == jet_of(1, 1, {"-i"}, {{{0}, "1/1-1/1 i"}, {{1}, "-i"}}));

  SUBCASE("involution") {
    for (std::uint64_t s = 1; s <= 4; ++s) {
      Jet r = generate_random_jet_at(2, 6, s, 8, pt({"1/2+1/3 i", "-2"}));
      CHECK(schwarz(schwarz(r)) == r);
    }
  }
}

TEST_CASE("composition of jets") {
  SUBCASE("(y^2 at 1) o (1 + z) = 1 + 2z + z^2") {
    Jet f = Polynomial::variable(1, 1).pow(2).to_jet(pt({"1"}), 2);
    Jet g = jet_of(1, 2, {"0"}, {{{0}, "1"}, {{1}, "1"}});
    CHECK(compose(f, {g}) ==
          jet_of(1, 2, {"0"}, {{{0}, "1"}, {{1}, "2"}, {{2}, "1"}}));
  }
  SUBCASE("exp o 2z to order 3") {
    Jet g = jet_of(1, 3, {"0"}, {{{1}, "2"}});
    CHECK(compose(exp_jet(3), {g}) ==
          jet_of(1, 3, {"0"}, {{{0}, "1"}, {{1}, "2"}, {{2}, "2"}, {{3}, "4/3"}}));
  }
  SUBCASE("identity composition") {
    Jet id = Jet::coordinate(1, 5, pt({"0"}), 1);
    CHECK(compose(exp_jet(5), {id}) == exp_jet(5));
  }
  SUBCASE("inner value must hit the outer base") {
    Jet g = jet_of(1, 3, {"0"}, {{{0}, "1"}, {{1}, "2"}});
    CHECK_THROWS_AS(compose(exp_jet(3), {g}), CalcError);
  }
  SUBCASE("arity mismatch") {
    Jet g = Jet::coordinate(1, 3, pt({"0"}), 1);
    CHECK_THROWS_AS(compose(exp_jet(3), {g, g}), CalcError);
  }
}

TEST_CASE("operators commute with schwarz reflection") {
  for (std::uint64_t s = 1; s <= 4; ++s) {
    SeededRng rng(s);
    Jet g = generate_random_jet_at(1, 6, s * 3 + 1, 6, pt({"1/2+1/3 i"}));
    Point a{g.value()};
    Jet f = generate_random_jet_at(1, 6, s * 3 + 2, 6, a);
    CHECK(schwarz(compose(f, {g})) == compose(schwarz(f), {schwarz(g)}));

    Jet h = generate_random_jet(1, 6, s * 3 + 3, 6)
                .with_coeff(MultiIndex::zero(1), GaussianRational(0));
    CHECK(schwarz(monomial_div(h)) == monomial_div(schwarz(h)));
  }
}

TEST_CASE("implicit function extraction") {
  SUBCASE("y - x") {
    Polynomial p = Polynomial::variable(2, 2) - Polynomial::variable(2, 1);
    Jet phi = implicit_fn(p.to_jet(pt({"0", "0"}), 4), 3);
    CHECK(phi == Jet::coordinate(1, 3, pt({"0"}), 1));
  }
  SUBCASE("y - x - x^2") {
    Polynomial x = Polynomial::variable(2, 1), y = Polynomial::variable(2, 2);
    Jet phi = implicit_fn((y - x - x.pow(2)).to_jet(pt({"0", "0"}), 4), 3);
    CHECK(phi == jet_of(1, 3, {"0"}, {{{1}, "1"}, {{2}, "1"}}));
  }
  SUBCASE("y + y^2 - x solved to order 3") {
    Polynomial x = Polynomial::variable(2, 1), y = Polynomial::variable(2, 2);
    Jet f = (y + y.pow(2) - x).to_jet(pt({"0", "0"}), 4);
    Jet phi = implicit_fn(f, 3);
    CHECK(phi == jet_of(1, 3, {"0"}, {{{1}, "1"}, {{2}, "-1"}, {{3}, "2"}}));
    // Back-substitution produces the zero jet.
    std::vector<Jet> inner{Jet::coordinate(1, 3, pt({"0"}), 1), phi};
    CHECK(compose(f.truncated(3), inner).is_zero());
  }
  SUBCASE("domain violations") {
    Polynomial x = Polynomial::variable(2, 1), y = Polynomial::variable(2, 2);
    Jet nonzero_value = (y - x + Polynomial::constant(2, GaussianRational(1)))
                            .to_jet(pt({"0", "0"}), 3);
    CHECK_THROWS_AS(implicit_fn(nonzero_value, 2), CalcError);
    Jet zero_slope = (y.pow(2) - x).to_jet(pt({"0", "0"}), 3);
    CHECK_THROWS_AS(implicit_fn(zero_slope, 2), CalcError);
    CHECK_THROWS_AS(implicit_fn(exp_jet(3), 2), CalcError);  // one variable
  }
}

TEST_CASE("monomial division") {
  SUBCASE("(exp - 1) / z has coefficients 1/(n+1)!") {
    Jet expm1 = sub(exp_jet(6), Jet::constant(1, 6, pt({"0"}), GaussianRational(1)));
    Jet q = monomial_div(expm1);
    CHECK(q.order() == 5);
    for (int n = 0; n <= 5; ++n) {
      mpq_class expect(1);
      expect /= factorial(static_cast<unsigned long>(n + 1));
      CHECK(q.coeff(mi({static_cast<std::uint32_t>(n)})) == GaussianRational(expect));
    }
  }
  SUBCASE("z^2 / z = z") {
    Jet z2 = jet_of(1, 3, {"0"}, {{{2}, "1"}});
    CHECK(monomial_div(z2) == jet_of(1, 2, {"0"}, {{{1}, "1"}}));
  }
  SUBCASE("nonvanishing constant term is rejected") {
    Jet f = jet_of(1, 2, {"0"}, {{{0}, "1"}, {{1}, "1"}});
    CHECK_THROWS_AS(monomial_div(f), CalcError);
  }
  SUBCASE("two-sided inverse of multiplying by z_n - a_n") {
    for (std::uint64_t s = 1; s <= 4; ++s) {
      Jet r = generate_random_jet_at(2, 6, s + 40, 6, pt({"1", "-1/2"}));
      Jet zn = sub(Jet::coordinate(2, 6, r.base(), 2),
                   Jet::constant(2, 6, r.base(), r.base()[1]));
      Jet product = mul(r.truncated(5), zn.truncated(5));  // vanishes on z2 = a2
      CHECK(monomial_div(product) == r.truncated(4));
      Jet back = mul(monomial_div(product), zn.truncated(4));
      CHECK(equal_to_order(back, product.truncated(4), 4));
    }
  }
}

TEST_CASE("deramification") {
  SUBCASE("z^2 + z^4 with m = 2") {
    Jet f = jet_of(1, 4, {"0"}, {{{2}, "1"}, {{4}, "1"}});
    CHECK(deramify(f, 2) == jet_of(1, 2, {"0"}, {{{1}, "1"}, {{2}, "1"}}));
  }
  SUBCASE("odd coefficient is rejected") {
    Jet f = jet_of(1, 2, {"0"}, {{{1}, "1"}});
    CHECK_THROWS_AS(deramify(f, 2), CalcError);
  }
  SUBCASE("m = 1 is the identity") {
    Jet r = generate_random_jet(2, 5, 77, 6);
    CHECK(deramify(r, 1) == r);
  }
  SUBCASE("inverts composition with z^m") {
    for (unsigned m : {2u, 3u}) {
      Jet f = generate_random_jet(1, 12, 88 + m, 6);
      Jet zm = Polynomial::variable(1, 1).pow(m).to_jet(pt({"0"}), 12);
      Jet g = compose(f, {zm});
      CHECK(deramify(g, m) == f.truncated(12 / static_cast<int>(m)));
    }
  }
}

TEST_CASE("polynomial embedding corner cases") {
  CHECK(Polynomial::constant(2, GaussianRational(1)).to_jet(pt({"5", "i"}), 3) ==
        Jet::constant(2, 3, pt({"5", "i"}), GaussianRational(1)));
  Polynomial p = Polynomial::variable(1, 1).scaled(gr("1/1+1/1 i"));
  CHECK(p.to_jet(pt({"0"}), 2) == jet_of(1, 2, {"0"}, {{{1}, "1/1+1/1 i"}}));
}
