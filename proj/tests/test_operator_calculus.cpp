#include <doctest.h>

#include <sstream>

#include "germcalc/errors.hpp"
#include "germcalc/expr.hpp"
#include "germcalc/operators.hpp"
#include "germcalc/random_jet.hpp"
#include "test_util.hpp"

using namespace germcalc;
using namespace testutil;

TEST_CASE("expression parsing") {
  SUBCASE("bare base sugar") {
    ExprPtr e = parse_expr("(germ f 0)");
    CHECK(e->kind == ExprKind::InputGerm);
    CHECK(e->name == "f");
    CHECK(e->base == pt({"0"}));
  }
  SUBCASE("bracketed complex base points") {
    ExprPtr e = parse_expr("(germ g [1/2+3/4 i, -1])");
    CHECK(e->base == pt({"1/2+3/4 i", "-1"}));
  }
  SUBCASE("nested operators and polynomials") {
    ExprPtr e = parse_expr("(mdiv (compose (gpoly (- z1 1) [1]) (germ exp [0])))");
    CHECK(e->kind == ExprKind::MonomialDiv);
    CHECK(e->children[0]->kind == ExprKind::Compose);
    CHECK(e->children[0]->children[0]->kind == ExprKind::GaussianPoly);
    ExprPtr d = parse_expr("(deram 2 (germ g 0))");
    CHECK(d->kind == ExprKind::Deram);
    CHECK(d->deram_m == 2);
  }
  SUBCASE("printing parses back") {
    ExprPtr e = parse_expr(
        "(schwarz (partial 2 (compose (poly (+ (* 1/2 z1) (^ z2 3)) [0,0])"
        " (germ a [0]) (germ b [0]))))");
    ExprPtr round = parse_expr(to_string(e));
    CHECK(to_string(round) == to_string(e));
  }
  SUBCASE("errors carry positions") {
    CHECK_THROWS_WITH_AS(parse_expr("(frob x)"), doctest::Contains("unknown operator"),
                         CalcError);
    CHECK_THROWS_WITH_AS(parse_expr("(germ f [1/q])"), doctest::Contains("malformed rational"),
                         CalcError);
    CHECK_THROWS_AS(parse_expr("(compose (germ f 0))"), CalcError);  // missing inner
    CHECK_THROWS_AS(parse_expr("(deram 0 (germ f 0))"), CalcError);
    CHECK_THROWS_AS(parse_expr("(poly (^ z1 -2) [0])"), CalcError);
    CHECK_THROWS_AS(parse_expr("(poly (+ z1 z2) [0])"), CalcError);  // too few coordinates
  }
}

TEST_CASE("classification") {
  CHECK(classify(parse_expr("(schwarz (partial 1 (germ f 0)))")).cls == OperatorClass::BStar);
  CHECK(classify(parse_expr("(mdiv (germ f 0))")).cls == OperatorClass::CStar);
  CHECK(classify(parse_expr("(deram 2 (germ g 0))")).cls == OperatorClass::DStar);
  CHECK(classify(parse_expr("(compose (gpoly z1 [0]) (germ f 0))")).gaussian_only);
  CHECK(!classify(parse_expr("(compose (poly z1 [0]) (germ f 0))")).gaussian_only);

  SUBCASE("a parent's class contains every child's class") {
    ExprPtr child = parse_expr("(mdiv (germ f 0))");
    ExprPtr parent = make_deram(2, make_schwarz(child));
    CHECK(static_cast<int>(classify(parent).cls) >= static_cast<int>(classify(child).cls));
    ExprPtr shared = make_compose(parse_expr("(poly z1 [0/1+1/1 i])"),
                                  {make_monomial_div(parse_expr("(germ h 0)"))});
    CHECK(static_cast<int>(classify(shared).cls) >=
          static_cast<int>(classify(shared->children[1]).cls));
  }
}

TEST_CASE("structural shift bounds") {
  CHECK(shift_bound(parse_expr("(schwarz (germ f 0))"))(7) == 7);
  CHECK(shift_bound(parse_expr("(mdiv (partial 1 (germ f 0)))"))(7) == 9);
  CHECK(shift_bound(parse_expr("(deram 2 (germ g 0))"))(7) == 14);
  SUBCASE("pieces combine through composition") {
    ExprPtr e = parse_expr("(compose (mdiv (germ f [0])) (deram 3 (germ g [0])))");
    ShiftBound b = shift_bound(e);
    CHECK(b(2) == 6);   // the deramified leaf dominates
    CHECK(b(0) == 1);   // the division leaf dominates at small orders
    CHECK(!b.has_constant_excess());
  }
  SUBCASE("constant excess for division-only expressions") {
    ShiftBound b = shift_bound(parse_expr("(mdiv (mdiv (partial 1 (germ f 0))))"));
    CHECK(b.has_constant_excess());
    CHECK(b.constant_excess() == 3);
    CHECK(b.to_string() == "n+3");
  }
  SUBCASE("polynomial-only expressions need no germ data") {
    CHECK(shift_bound(parse_expr("(poly (^ z1 2) [0])"))(9) == 0);
  }
}

TEST_CASE("expression evaluation") {
  GermEnv env;
  env.bind("exp", exp_jet(8));

  SUBCASE("germ leaves truncate to the requested order") {
    CHECK(apply_expr(parse_expr("(germ exp [0])"), env, 5) == exp_jet(5));
  }
  SUBCASE("division pipeline") {
    Jet q = apply_expr(parse_expr("(mdiv (compose (gpoly (- z1 1) [1]) (germ exp [0])))"),
                       env, 5);
    mpq_class expect(1);
    expect /= factorial(6);
    CHECK(q.coeff(mi({5})) == GaussianRational(expect));
  }
  SUBCASE("deramification domain error surfaces") {
    GermEnv env2;
    env2.bind("g", Jet::coordinate(1, 4, pt({"0"}), 1));
    CHECK_THROWS_AS(apply_expr(parse_expr("(deram 2 (germ g 0))"), env2, 1), CalcError);
  }
  SUBCASE("unbound germs and insufficient orders are errors") {
    CHECK_THROWS_WITH_AS(apply_expr(parse_expr("(germ nope 0)"), env, 2),
                         doctest::Contains("not bound"), CalcError);
    CHECK_THROWS_WITH_AS(apply_expr(parse_expr("(germ exp 0)"), env, 9),
                         doctest::Contains("shift bound requires order 9"), CalcError);
    CHECK_THROWS_WITH_AS(apply_expr(parse_expr("(germ exp 1)"), env, 2),
                         doctest::Contains("not bound"), CalcError);
  }
  SUBCASE("evaluation is deterministic") {
    ExprPtr e = parse_expr("(partial 1 (mdiv (compose (gpoly (- z1 1) [1]) (germ exp [0]))))");
    CHECK(apply_expr(e, env, 4) == apply_expr(e, env, 4));
  }
  SUBCASE("shared sub-expressions evaluate once and consistently") {
    ExprPtr shared = parse_expr("(germ exp [0])");
    Polynomial sum = Polynomial::variable(2, 1) + Polynomial::variable(2, 2);
    ExprPtr e = make_compose(make_poly(sum, pt({"1", "1"}), false), {shared, shared});
    CHECK(apply_expr(e, env, 4) == scale(GaussianRational(2), exp_jet(4)));
  }
  SUBCASE("one germ name may live at several base points") {
    GermEnv env2;
    env2.bind("f", exp_jet(4));
    env2.bind("f", jet_of(1, 4, {"1"}, {{{0}, "2"}, {{1}, "3"}}));
    Polynomial sum = Polynomial::variable(2, 1) + Polynomial::variable(2, 2);
    ExprPtr e = make_compose(make_poly(sum, pt({"1", "2"}), false),
                             {make_germ("f", pt({"0"})), make_germ("f", pt({"1"}))});
    // Inner bases differ, so this composition is rejected; what matters is
    // that both leaves resolved to their own binding first.
    CHECK_THROWS_WITH_AS(apply_expr(e, env2, 2), doctest::Contains("share one base"),
                         CalcError);
    CHECK(apply_expr(make_germ("f", pt({"1"})), env2, 2).value() == GaussianRational(2));
  }
}

TEST_CASE("probed shift lower bounds") {
  GermEnv env;
  env.bind("f", generate_random_jet(1, 12, 5, 6));

  SUBCASE("identity sees nothing above the output order") {
    ExprPtr id = parse_expr("(germ f 0)");
    CHECK(!measure_shift_lower_bound(id, env, 3, 4));
    CHECK(measure_shift_lower_bound(id, env, 3, 3));
  }
  SUBCASE("derivative pulls one extra order") {
    ExprPtr d = parse_expr("(partial 1 (germ f 0))");
    CHECK(measure_shift_lower_bound(d, env, 3, 4));
    CHECK(!measure_shift_lower_bound(d, env, 3, 5));
  }
  SUBCASE("probes never beat the structural bound") {
    for (const char* text : {"(mdiv (partial 1 (germ f 0)))", "(schwarz (germ f 0))"}) {
      ExprPtr e = parse_expr(text);
      ShiftBound bound = shift_bound(e);
      for (int n = 0; n <= 6; ++n)
        CHECK(measured_shift(e, env, n, static_cast<int>(bound(n)) + 3) <= bound(n));
    }
  }
}

TEST_CASE("vanishing stability harness") {
  Jet f = generate_random_jet(1, 20, 99, 6);
  GermEnv env;
  env.bind("f", f);
  Polynomial diff = Polynomial::variable(2, 1) - Polynomial::variable(2, 2);
  ExprPtr e = make_compose(make_poly(diff, {f.value(), f.value()}, false),
                           {make_germ("f", pt({"0"})), make_germ("f", pt({"0"}))});
  StabilityReport rep = vanishing_stability_test(e, env, 6, 4, 10, 1234);
  CHECK(rep.baseline_zero);
  CHECK(rep.trials.size() == 4);
  CHECK(rep.stable());
}
