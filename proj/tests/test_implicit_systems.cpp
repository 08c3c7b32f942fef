#include <doctest.h>

#include "germcalc/errors.hpp"
#include "germcalc/implicit_systems.hpp"
#include "germcalc/json_io.hpp"
#include "germcalc/operators.hpp"
#include "germcalc/random_jet.hpp"
#include "test_util.hpp"

using namespace germcalc;
using namespace testutil;

namespace {

// Variables of a size-n, one-dimensional-base system: x, t_1..t_n, then the
// exponentials in the same order.
Polynomial sv(int n, int idx) { return Polynomial::variable(2 * (1 + n), idx); }

ImplicitSystem exp_system() {
  // t_1 = e^x
  return ImplicitSystem(1, 1, {sv(1, 2) - sv(1, 3)});
}

ImplicitSolution exp_solution(int order) { return ImplicitSolution({exp_jet(order)}); }

}  // namespace

TEST_CASE("residual evaluation") {
  SUBCASE("the exponential satisfies t = e^x with Jacobian (1)") {
    auto res = eval_residual(exp_system(), exp_solution(16), 16);
    REQUIRE(res.size() == 1);
    CHECK(res[0].is_zero());
    auto jac = jacobian_at_base(exp_system(), exp_solution(16));
    CHECK(jac[0][0] == GaussianRational(1));
    CHECK(check_solution(exp_system(), exp_solution(16), 16).ok());
  }
  SUBCASE("t = 0 solves the system F = t") {
    ImplicitSystem sys(1, 1, {sv(1, 2)});
    ImplicitSolution sol({Jet::zero(1, 8, pt({"0"}))});
    CHECK(eval_residual(sys, sol, 8)[0].is_zero());
  }
  SUBCASE("t - x at t = 2z leaves the residual z") {
    ImplicitSystem sys(1, 1, {sv(1, 2) - sv(1, 1)});
    ImplicitSolution sol({jet_of(1, 8, {"0"}, {{{1}, "2"}})});
    Jet r = eval_residual(sys, sol, 8)[0];
    CHECK(r == jet_of(1, 8, {"0"}, {{{1}, "1"}}));
    CheckResult c = check_solution(sys, sol, 8);
    CHECK(!c.residual_zero);
    CHECK(c.jacobian_invertible);
  }
  SUBCASE("F = t^2 at t = 0: residual zero, Jacobian singular") {
    ImplicitSystem sys(1, 1, {sv(1, 2).pow(2)});
    ImplicitSolution sol({Jet::zero(1, 8, pt({"0"}))});
    CheckResult c = check_solution(sys, sol, 8);
    CHECK(c.residual_zero);
    CHECK(!c.jacobian_invertible);
  }
  SUBCASE("residuals are additive in the system components") {
    SeededRng rng(3);
    ImplicitSolution sol({generate_random_jet(1, 6, 31, 5)});
    Polynomial p1 = sv(1, 2).pow(2) - sv(1, 1);
    Polynomial p2 = sv(1, 1) * sv(1, 2) + Polynomial::constant(4, gr("1/2+1/1 i"));
    ImplicitSystem s1(1, 1, {p1}), s2(1, 1, {p2}), s12(1, 1, {p1 + p2});
    CHECK(eval_residual(s12, sol, 6)[0] ==
          add(eval_residual(s1, sol, 6)[0], eval_residual(s2, sol, 6)[0]));
  }
  SUBCASE("exponentials of germs with nonzero value are rejected") {
    // F = t - Y(t): needs e^(psi) with psi(0) = 1.
    ImplicitSystem sys(1, 1, {sv(1, 2) - sv(1, 4)});
    ImplicitSolution sol({Jet::constant(1, 8, pt({"0"}), GaussianRational(1))});
    CHECK_THROWS_AS(eval_residual(sys, sol, 8), CalcError);
  }
}

TEST_CASE("schwarz closure conjugates systems and solutions") {
  SUBCASE("real systems are fixed") {
    auto [sys, sol] = closure_schwarz(exp_system(), exp_solution(8));
    CHECK(sys.components()[0] == exp_system().components()[0]);
    CHECK(sol.unknown(1) == exp_jet(8));
    CHECK(check_solution(sys, sol, 8).ok());
  }
  SUBCASE("an i coefficient flips sign") {
    ImplicitSystem sys(1, 1, {sv(1, 2) - sv(1, 1).scaled(GaussianRational::i())});
    ImplicitSolution sol({jet_of(1, 8, {"0"}, {{{1}, "i"}})});
    REQUIRE(check_solution(sys, sol, 8).ok());
    auto [csys, csol] = closure_schwarz(sys, sol);
    CHECK(csys.components()[0] == sv(1, 2) - sv(1, 1).scaled(gr("-i")));
    CHECK(check_solution(csys, csol, 8).ok());
  }
}

TEST_CASE("closure error paths") {
  SUBCASE("compose chaining must be exact") {
    // Chain germ value is 1, but the inner system is based at 0.
    ImplicitSystem g_sys(1, 1, {sv(1, 2) - sv(1, 3)});
    ImplicitSolution g_sol({exp_jet(8)});  // value 1 at 0
    CHECK_THROWS_WITH_AS(closure_compose(g_sys, g_sol, exp_system(), exp_solution(8)),
                         doctest::Contains("chaining"), CalcError);
  }
  SUBCASE("implicit closure requires a nonzero slope") {
    Polynomial comp = Polynomial::variable(6, 3) - Polynomial::variable(6, 1);
    ImplicitSystem sys(2, 1, {comp});  // t = z1
    ImplicitSolution sol({Polynomial::variable(2, 1).to_jet(pt({"0", "0"}), 6)});
    REQUIRE(check_solution(sys, sol, 6).ok());
    CHECK_THROWS_AS(closure_implicit(sys, sol), CalcError);
  }
  SUBCASE("implicit closure needs at least two base variables") {
    CHECK_THROWS_AS(closure_implicit(exp_system(), exp_solution(8)), CalcError);
  }
}

TEST_CASE("relation reduction error paths") {
  const int k = 8;
  Jet psi1 = sub(exp_jet(k), Jet::constant(1, k, pt({"0"}), GaussianRational(1)));
  SUBCASE("relations are verified on the jets") {
    ImplicitSystem sys(1, 2,
                       {sv(2, 2) + Polynomial::constant(6, GaussianRational(1)) - sv(2, 4),
                        sv(2, 3) + Polynomial::constant(6, GaussianRational(2)) -
                            sv(2, 4).scaled(GaussianRational(2))});
    ImplicitSolution sol({psi1, scale(GaussianRational(2), psi1)});
    LinearRelation wrong{1, {0, 3}, GaussianRational(0)};
    CHECK_THROWS_AS(reduce_linear_relation(sys, sol, wrong), CalcError);
  }
  SUBCASE("eliminating an exponentiated unknown needs a zero constant") {
    // F_2 = t_2 - Y(t_1) with psi_2 = e^(psi_1); relation psi_2-slot cannot
    // carry constant 1 here because the last unknown's exponential occurs.
    Polynomial c1 = sv(2, 2) + Polynomial::constant(6, GaussianRational(1)) - sv(2, 4);
    Polynomial c2 = sv(2, 2) - sv(2, 3) + Polynomial::constant(6, GaussianRational(1));
    ImplicitSystem sys(1, 2, {c1, sv(2, 6) * c2});
    // Make the second component use Y(t_2) so the reduction must reject K != 0.
    ImplicitSolution sol({psi1, add(psi1, Jet::constant(1, k, pt({"0"}), GaussianRational(1)))});
    LinearRelation rel{1, {0, 1}, GaussianRational(1)};
    CHECK_THROWS_AS(reduce_linear_relation(sys, sol, rel), CalcError);
  }
}

TEST_CASE("system and solution JSON round-trips") {
  ImplicitSystem sys(1, 2,
                     {sv(2, 2) + Polynomial::constant(6, gr("1/2+1/3 i")) - sv(2, 4),
                      sv(2, 3) - sv(2, 1).pow(2)});
  json sdoc = system_to_json(sys);
  CHECK(sdoc.at("vars").get<int>() == 3);  // base_dim 1 + size 2
  std::string stext = canonical_dump(sdoc);
  ImplicitSystem back = system_from_json(parse_json_text(stext));
  CHECK(back.base_dim() == 1);
  CHECK(back.size() == 2);
  CHECK(back.components()[0] == sys.components()[0]);
  CHECK(canonical_dump(system_to_json(back)) == stext);

  ImplicitSolution sol(
      {generate_random_jet(1, 4, 5, 5), generate_random_jet(1, 4, 6, 5)});
  std::string jtext = canonical_dump(solution_to_json(sol));
  ImplicitSolution sol_back = solution_from_json(parse_json_text(jtext));
  CHECK(sol_back.size() == 2);
  CHECK(sol_back.unknown(1) == sol.unknown(1));
  CHECK(canonical_dump(solution_to_json(sol_back)) == jtext);

  SUBCASE("solutions without coordinate germs are rejected") {
    json bad = solution_to_json(sol);
    bad["jets"].erase(0);
    CHECK_THROWS_AS(solution_from_json(bad), CalcError);
  }
}
