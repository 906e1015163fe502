#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cx/construct.hpp"
#include "cx/errors.hpp"

using namespace cx;

TEST(BuildNondiv, CoefficientsForPFour) {
  const CounterexampleInstance inst = build_nondiv(4.0, 16, Stage::full);
  const double s = 1.0 / std::sqrt(3.0);
  const CoeffMatrix& a = inst.coefficients[Quadrant::I];
  EXPECT_NEAR(a.a11, 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(a.a12, s, 1e-14);
  EXPECT_NEAR(inst.coefficients[Quadrant::II].a12, -s, 1e-14);
  EXPECT_EQ(inst.meta.n, 16);
  EXPECT_NEAR(inst.meta.omega, 2.0 * kPi / 3.0, 1e-15);
  EXPECT_EQ(inst.stages.size(), 5u);
  EXPECT_EQ(inst.quadrants.size(), 4u);
}

TEST(BuildNondiv, Errors) {
  EXPECT_THROW(build_nondiv(2.0, 16, Stage::full), ParameterError);
  EXPECT_THROW(build_nondiv(4.0, 1, Stage::full), ParameterError);
  EXPECT_THROW(stage_from_string("third"), ParameterError);
}

TEST(BuildNondiv, VanishesOnAxes) {
  const CounterexampleInstance inst = build_nondiv(3.0, 16, Stage::full);
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> r(-4.0, 4.0);
  for (int i = 0; i < 1000; ++i) {
    const double t = r(gen);
    if (t == 0.0) continue;
    EXPECT_NEAR(inst.solution.value({t, 0.0}), 0.0, 1e-12);
    EXPECT_NEAR(inst.solution.value({0.0, t}), 0.0, 1e-12);
  }
}

TEST(BuildNondiv, StageConsistency) {
  const auto q = build_nondiv(4.0, 16, Stage::quadrant);
  const auto h = build_nondiv(4.0, 16, Stage::half);
  const auto f = build_nondiv(4.0, 16, Stage::full);
  for (double r : {0.1, 0.5, 1.7, 2.6}) {
    for (double t : {0.2, 0.8, 1.3}) {
      const Point x = Point::polar(r, t);
      EXPECT_NEAR(h.solution.value(x), q.solution.value(x), 1e-12);
      EXPECT_NEAR(h.rhs.f.value(x), q.rhs.f.value(x), 1e-12 * std::max(1.0, std::abs(q.rhs.f.value(x))));
      const Point y = Point::polar(r, -t);
      EXPECT_NEAR(f.solution.value(y), h.solution.value(y), 1e-12);
    }
  }
  EXPECT_EQ(q.meta.ellipticity.delta, h.meta.ellipticity.delta);
  EXPECT_EQ(q.meta.ellipticity.delta, f.meta.ellipticity.delta);
  EXPECT_GT(f.meta.ellipticity.delta, 0.0);
}

TEST(BuildNondiv, StrongIdentityAtInteriorPoints) {
  const auto inst = build_nondiv(8.0, 64, Stage::full);
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double r = std::exp(std::log(1.0 / 128) + u(gen) * std::log(4.0 * 128));
    const Point x = Point::polar(r, 2.0 * kPi * u(gen));
    if (on_axis(x)) continue;
    const double f = inst.rhs.f.value(x);
    const double lu = apply_nondiv(inst.coefficients, inst.solution, x).value;
    EXPECT_LE(std::abs(lu - f) / (1.0 + std::abs(f)), 1e-8);
  }
}

TEST(BuildNondiv, NormBookkeeping) {
  // Reflections preserve |D^2 u|: the whole-plane norm is four quadrant norms.
  const auto inst = build_nondiv(4.0, 16, Stage::full);
  const NondivTrace& t = *inst.trace;
  const double R = 3.0 * 2.0;
  Domain2D quad = Domain2D::quadrant(Quadrant::I, R);
  quad.add_radial_breaks({1.0 / 32, 1.0 / 16, 1.0 / 8, 0.5, 1.0, 2.0, 3.0});
  quad.subdivide_angles(16);
  Domain2D plane = Domain2D::truncated_plane(R);
  plane.add_radial_breaks({1.0 / 32, 1.0 / 16, 1.0 / 8, 0.5, 1.0, 2.0, 3.0});
  plane.subdivide_angles(16);
  const Tolerance tol(0.0, 1e-9);
  const double quarter = lp_norm(t.u_n, JetKind::hessian, quad, 4.0, tol).pth_power.value;
  const double whole = lp_norm(t.u_full, JetKind::hessian, plane, 4.0, tol).pth_power.value;
  EXPECT_NEAR(whole / (4.0 * quarter), 1.0, 1e-6);
}

TEST(BuildDiv, RewiredCoefficients) {
  const CounterexampleInstance inst = build_div(4.0, 16);
  const CoeffMatrix& a = inst.coefficients[Quadrant::I];
  EXPECT_NEAR(a.a11, 4.0 / 3.0, 1e-14);
  EXPECT_EQ(a.a12, 0.0);
  EXPECT_NEAR(a.a21, 2.0 / std::sqrt(3.0), 1e-14);
  EXPECT_EQ(a.a22, 1.0);
  const CoeffMatrix base = inst.trace->pushforward;
  for (Quadrant k : {Quadrant::I, Quadrant::II, Quadrant::III, Quadrant::IV}) {
    EXPECT_EQ(inst.coefficients[k].a12, 0.0);
    EXPECT_EQ(inst.coefficients[k].a21, 2.0 * quadrant_sign(k) * base.a12);
    EXPECT_EQ(inst.coefficients[k].a11, base.a11);
    EXPECT_EQ(inst.coefficients[k].a22, base.a22);
  }
  EXPECT_EQ(inst.kind, InstanceKind::div_full);
  EXPECT_EQ(inst.stages.back(), "differentiate_x2");
  EXPECT_THROW(build_div(2.0, 16), ParameterError);
}

TEST(BuildDiv, SolutionEvenInX2) {
  const CounterexampleInstance inst = build_div(4.0, 16);
  for (double r : {0.09, 0.5, 2.5}) {
    for (double t : {0.3, 1.2, 2.0, 2.9}) {
      const Point x = Point::polar(r, t);
      EXPECT_NEAR(inst.solution.value({x.x1, -x.x2}), inst.solution.value(x), 1e-12);
    }
  }
}

TEST(BuildDiv, WeakResidualVanishes) {
  const CounterexampleInstance inst = build_div(4.0, 16);
  for (const BumpTestFunction& b : seeded_bumps(3, 42)) {
    const QuadratureResult r = weak_residual(inst.coefficients, inst.solution, inst.rhs, b, Tolerance(1e-6));
    EXPECT_LE(std::abs(r.value), 10.0 * r.error_estimate);
  }
}

TEST(BuildDiv, MutatedCoefficientBreaksWeakResidual) {
  CounterexampleInstance inst = build_div(4.0, 16);
  for (Quadrant k : {Quadrant::I, Quadrant::II, Quadrant::III, Quadrant::IV}) inst.coefficients[k].a21 *= 1.01;
  const BumpTestFunction b{Point{0.3, 0.2}, 1.0};
  const QuadratureResult r = weak_residual(inst.coefficients, inst.solution, inst.rhs, b, Tolerance(1e-6));
  EXPECT_GT(std::abs(r.value), 100.0 * r.error_estimate);
}

TEST(BuildPs, Coefficients) {
  const auto inst = build_ps(kPi / 6, 1.0);
  EXPECT_NEAR(inst.coefficients[Quadrant::II].a11, 3.0, 1e-14);
  EXPECT_NEAR(inst.coefficients[Quadrant::IV].a22, 3.0, 1e-14);
  EXPECT_EQ(inst.coefficients[Quadrant::I].a11, 1.0);
  EXPECT_EQ(inst.coefficients[Quadrant::III].a12, 0.0);
  EXPECT_THROW(build_ps(kPi / 6, 0.0), ParameterError);
  EXPECT_THROW(build_ps(0.0, 1.0), ParameterError);
}

TEST(BuildPs, QuarterPiCollapses) {
  const auto inst = build_ps(kPi / 4, 1.0);
  for (Quadrant k : {Quadrant::I, Quadrant::II, Quadrant::III, Quadrant::IV}) {
    EXPECT_NEAR(inst.coefficients[k].a11, 1.0, 1e-15);
    EXPECT_NEAR(inst.coefficients[k].a22, 1.0, 1e-15);
  }
  // nu = 1: u is linear, sin(theta - pi/4) r.
  const Point x{0.7, 0.4};
  EXPECT_NEAR(inst.solution.value(x), (x.x2 - x.x1) / std::sqrt(2.0), 1e-14);
  for (const BumpTestFunction& b : seeded_bumps(3, 9)) {
    EXPECT_NEAR(weak_residual(inst.coefficients, inst.solution, inst.rhs, b, Tolerance(1e-10)).value, 0.0, 1e-9);
  }
}

TEST(BuildPs, GradientSquareIntegrable) {
  const auto inst = build_ps(kPi / 6, 1.0);
  const LpNorm n = lp_norm(inst.solution, JetKind::gradient, Domain2D::truncated_plane(1.0), 2.0, Tolerance(0.0, 1e-9));
  EXPECT_TRUE(std::isfinite(n.norm));
  EXPECT_GT(n.norm, 0.0);
}

TEST(FitLine, TwoPointsExact) {
  const Regression r = fit_line({1.0, 3.0}, {2.0, 8.0});
  EXPECT_DOUBLE_EQ(r.slope, 3.0);
  EXPECT_DOUBLE_EQ(r.intercept, -1.0);
  EXPECT_EQ(r.r_squared, 1.0);
  EXPECT_THROW(fit_line({1.0}, {1.0}), ParameterError);
  EXPECT_THROW(fit_line({1.0, 1.0}, {1.0, 2.0}), ParameterError);
  const Regression noisy = fit_line({0, 1, 2, 3}, {0, 1, 0, 1});
  EXPECT_GE(noisy.r_squared, 0.0);
  EXPECT_LE(noisy.r_squared, 1.0);
}

TEST(Blowup, TwoRowStudy) {
  const BlowupReport rep = blowup_study(4.0, {16, 64}, 1e-8);
  ASSERT_EQ(rep.rows.size(), 2u);
  const double slope = (rep.rows[1].d2_pow_p - rep.rows[0].d2_pow_p) / (rep.rows[1].ln_n - rep.rows[0].ln_n);
  EXPECT_NEAR(rep.regression.slope, slope, 1e-9 * std::abs(slope));
  EXPECT_EQ(rep.regression.r_squared, 1.0);
  // Exact slope omega (sqrt(2) alpha (alpha - 1))^p.
  const double exact = (2.0 * kPi / 3.0) * std::pow(std::sqrt(2.0) * 1.5 * 0.5, 4.0);
  EXPECT_NEAR(rep.regression.slope, exact, 1e-6 * exact);
  EXPECT_GT(rep.regression.slope, 0.0);
}

TEST(Blowup, BoundedNormsAreIndependentOfN) {
  const BlowupReport rep = blowup_study(3.0, {1024, 4096}, 1e-8);
  EXPECT_NEAR(rep.rows[0].lp_v / rep.rows[1].lp_v, 1.0, 1e-8);
  EXPECT_NEAR(rep.rows[0].lp_h / rep.rows[1].lp_h, 1.0, 1e-8);
}

TEST(Blowup, InputValidation) {
  EXPECT_THROW(blowup_study(4.0, {16}, 1e-8), ParameterError);
  EXPECT_THROW(blowup_study(4.0, {64, 16}, 1e-8), ParameterError);
  EXPECT_THROW(blowup_study(4.0, {1, 16}, 1e-8), ParameterError);
  EXPECT_THROW(blowup_study(2.0, {16, 64}, 1e-8), ParameterError);
  EXPECT_THROW(blowup_study(4.0, {16, 64}, 0.0), ParameterError);
}
