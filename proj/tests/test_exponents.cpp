#include <doctest.h>

#include "nlslab/decompose.hpp"
#include "nlslab/globalize.hpp"
#include "nlslab/norms.hpp"
#include "nlslab/rational.hpp"

using namespace nlslab;

TEST_SUITE_BEGIN("exponents");

TEST_CASE("conjugate exponent") {
  CHECK(conjugate_exponent(2.0) == doctest::Approx(2.0));
  CHECK(conjugate_exponent(3.0) == doctest::Approx(1.5));
  // p0 = 3 - eps has conjugate (3-eps)/(2-eps)
  const double eps = 0.1;
  CHECK(conjugate_exponent(3.0 - eps) ==
        doctest::Approx((3.0 - eps) / (2.0 - eps)));
  CHECK(conjugate_exponent(Rat(3)) == Rat(3, 2));
  CHECK_THROWS_AS(conjugate_exponent(1.0), Error);
  CHECK_THROWS_AS(conjugate_exponent(0.5), Error);
}

TEST_CASE("conjugate exponent is an involution") {
  for (double a : {1.01, 1.5, 2.0, 2.9, 7.0, 40.0}) {
    CHECK(conjugate_exponent(conjugate_exponent(a)) ==
          doctest::Approx(a).epsilon(1e-13));
  }
}

TEST_CASE("q_exponent ledger values are exact in rational arithmetic") {
  CHECK(q_exponent(Rat(2), Rat(6)) == Rat(6));
  CHECK(q_exponent(Rat(3), Rat(6)) == Rat(4));
  CHECK(q_exponent(Rat(3), Rat(4)) == Rat(24, 5));
  CHECK(q_exponent(Rat(2), Rat(4)) == Rat(8));
}

TEST_CASE("q_exponent satisfies its defining identity") {
  for (double p : {1.0, 2.0, 2.5, 3.0, 3.9}) {
    for (double r : {2.0, 4.0, 6.0, 10.0}) {
      if (1.0 - 1.0 / p - 1.0 / r <= 0.0) continue;
      const double q = q_exponent(p, r);
      CHECK(2.0 / q + 1.0 / r ==
            doctest::Approx(1.0 - 1.0 / p).epsilon(1e-14));
    }
  }
}

TEST_CASE("q_exponent rejects degenerate denominators distinctly") {
  try {
    q_exponent(2.0, 2.0);  // 1 - 1/2 - 1/2 = 0
    FAIL("expected degenerate_exponent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_exponent);
  }
  CHECK_THROWS_AS(q_exponent(0.5, 4.0), Error);
}

TEST_CASE("admissibility window evaluates boundary cases exactly") {
  // 1/Q_3(6) = 1/4 sits on the boundary: the open window excludes it.
  CHECK_FALSE(admissibility_window(Rat(3), Rat(6)));
  CHECK_FALSE(admissibility_window(3.0, 6.0));
  CHECK(admissibility_window(Rat(29, 10), Rat(6)));
  CHECK(admissibility_window(2.9, 6.0));
  // r = 2 makes 1/2 - 1/r = 0: empty window.
  CHECK_FALSE(admissibility_window(Rat(2), Rat(2)));
  CHECK_FALSE(admissibility_window(2.0, 2.0));
  CHECK(admissibility_window(2.0, 6.0));
}

TEST_CASE("theta_from_target endpoint algebra") {
  // p = 13/6, p0 = 3 is the endpoint: theta = 10/13, alpha = 3/10, and
  // alpha meets the globalization boundary p0/(2(2p0-1)).
  ThetaParamsExact tp = theta_from_target(Rat(13, 6), Rat(3));
  CHECK(tp.theta == Rat(10, 13));
  CHECK(tp.alpha == Rat(3, 10));
  CHECK(tp.alpha == globalcond_threshold(Rat(3)));

  // Interpolation identity holds exactly.
  const Rat inv_p = (Rat(1) - tp.theta) / tp.p0 + tp.theta / Rat(2);
  CHECK(inv_p == Rat(6, 13));
}

TEST_CASE("theta_from_target limits") {
  ThetaParams near2 = theta_from_target(2.0 + 1e-9, 3.0);
  CHECK(near2.theta > 1.0 - 1e-6);
  CHECK(near2.alpha < 1e-6);
  ThetaParams nearp0 = theta_from_target(3.0 - 1e-9, 3.0);
  CHECK(nearp0.theta < 1e-6);
  CHECK(nearp0.alpha > 1e6);
  CHECK_THROWS_AS(theta_from_target(2.0, 3.0), Error);
  CHECK_THROWS_AS(theta_from_target(3.0, 3.0), Error);
}

TEST_CASE("theta solve inverts p_theta evaluation") {
  for (double theta = 0.1; theta < 0.95; theta += 0.05) {
    for (double p0 : {2.5, 2.9, 3.0}) {
      const double p = p_theta_of(theta, p0);
      ThetaParams tp = theta_from_target(p, p0);
      CHECK(tp.theta == doctest::Approx(theta).epsilon(1e-12));
    }
  }
}

TEST_CASE("exponent set carries derived quantities") {
  ExponentSet e;
  e.p = 2.1;
  e.p0 = 2.9;
  e.q = 6.0;
  e.r = 6.0;
  CHECK(e.q_prime() == doctest::Approx(1.2));
  CHECK(1.0 / e.q + 1.0 / e.q_prime() == doctest::Approx(1.0));
  CHECK(e.q_of(2.0, 6.0) == doctest::Approx(6.0));
}

TEST_CASE("rational helpers") {
  CHECK(parse_rational("13/6") == Rat(13, 6));
  CHECK(parse_rational("-5/2") == Rat(-5, 2));
  CHECK(parse_rational("7") == Rat(7));
  CHECK_THROWS_AS(parse_rational("x/y"), Error);
  CHECK(rat_pow(Rat(2), 10) == Rat(1024));
  CHECK(rat_pow(Rat(2, 3), -2) == Rat(9, 4));
  CHECK(rat_root_pow(Rat(4), Rat(1, 2)) == Rat(2));
  CHECK(rat_root_pow(Rat(8, 27), Rat(2, 3)) == Rat(4, 9));
  CHECK_THROWS_AS(rat_root_pow(Rat(2), Rat(1, 2)), Error);
}

TEST_CASE("plan arithmetic is exact for rational-friendly inputs") {
  // m = 1, c0 = 1, n = 4, alpha = 1/2: delta = (1*2*1*2)^-4 = 1/256.
  PlanExact plan =
      make_plan_exact(Rat(5, 2), Rat(1, 2), Rat(4), Rat(1), Rat(1));
  CHECK(plan.delta_n == Rat(1, 256));

  // T_N exponent at p0 = 3 (endpoint formula), alpha = 1/4:
  // (-8*3*(1/4) + 4*(1/4) + 2*3) / (3*3 - 2) = 1/7. Evaluated with the
  // rational function directly since make_plan_exact requires p0 < 3.
  const Rat p0(3), alpha(1, 4);
  const Rat t_exp = (Rat(-8) * p0 * alpha + Rat(4) * alpha + Rat(2) * p0) /
                    (Rat(3) * p0 - Rat(2));
  CHECK(t_exp == Rat(1, 7));

  // n0 exponent minus 4*alpha equals the T_N exponent identically
  // (n chosen so n^alpha is exactly rational).
  for (auto [pp, aa, nn] :
       {std::tuple<Rat, Rat, Rat>{Rat(5, 2), Rat(1, 4), Rat(16)},
        std::tuple<Rat, Rat, Rat>{Rat(29, 10), Rat(1, 8), Rat(256)},
        std::tuple<Rat, Rat, Rat>{Rat(21, 10), Rat(3, 10), Rat(1024)}}) {
    PlanExact px = make_plan_exact(pp, aa, nn, Rat(1), Rat(1));
    CHECK(px.n0_exponent - Rat(4) * aa == px.t_n_exponent);
    CHECK(px.delta_n * rat_pow(Rat(2) * rat_root_pow(nn, aa), 4) == Rat(1));
  }
}

TEST_CASE("make_plan arithmetic and globalcond flag") {
  GlobalizationPlan plan = make_plan(2.5, 0.5, 4.0, 1.0, 1.0, 1.0);
  CHECK(plan.delta_n == doctest::Approx(1.0 / 256.0).epsilon(1e-15));
  CHECK(plan.t_n == doctest::Approx(plan.n0 * plan.delta_n));
  // threshold at p0 = 2.5: 2.5/8 = 0.3125
  CHECK(globalcond_threshold(2.5) == doctest::Approx(0.3125));
  CHECK_FALSE(plan.globalcond);  // 0.5 > 0.3125
  GlobalizationPlan plan2 = make_plan(2.5, 0.25, 4.0, 1.0, 1.0, 1.0);
  CHECK(plan2.globalcond);
  CHECK_THROWS_AS(make_plan(3.0, 0.1, 4.0, 1.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(make_plan(2.5, 0.1, 0.5, 1.0, 1.0, 1.0), Error);
}

TEST_CASE("monotone life span under globalcond") {
  // With alpha below the threshold, t_n grows along an N sweep; above
  // it, the exponent is <= 0.
  const double p0 = 2.9;
  const double below = 0.5 * globalcond_threshold(p0);
  double prev = 0.0;
  for (double n : {4.0, 8.0, 16.0, 32.0, 64.0}) {
    GlobalizationPlan plan = make_plan(p0, below, n, 4.0, 1.0, 1e6);
    // c_small large enough that floor() does not flatten the sweep.
    CHECK(plan.t_n > prev);
    prev = plan.t_n;
  }
  const double above = 1.5 * globalcond_threshold(p0);
  GlobalizationPlan plan = make_plan(p0, above, 4.0, 4.0, 1.0, 1.0);
  CHECK(plan.t_n_exponent <= 0.0);
}

TEST_SUITE_END();
