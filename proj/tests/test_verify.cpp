#include <gtest/gtest.h>

#include <cmath>

#include "cx/errors.hpp"
#include "cx/verify.hpp"

using namespace cx;

namespace {

double max_measured(const VerificationReport& r) {
  double m = 0.0;
  for (const auto& c : r.checks) m = std::max(m, c.measured);
  return m;
}

}  // namespace

TEST(Report, PassIffEveryCheckPasses) {
  VerificationReport r;
  EXPECT_TRUE(r.pass);
  r.add("a", "", 1.0, 2.0);
  EXPECT_TRUE(r.pass);
  r.add("b", "", std::nan(""), 2.0);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.failures(), 1u);
  VerificationReport outer;
  outer.merge(r, "x/");
  EXPECT_FALSE(outer.pass);
  EXPECT_EQ(outer.checks[0].name, "x/a");
}

TEST(ResidualSuite, PassesOnConstruction) {
  const auto inst = build_nondiv(4.0, 64, Stage::full);
  const VerificationReport r = residual_suite(inst, 42);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.checks.size(), 4u);
  EXPECT_LE(max_measured(r), 1e-8);
}

TEST(ResidualSuite, HalfAndQuadrantStages) {
  for (Stage s : {Stage::quadrant, Stage::half}) {
    ResidualOptions o;
    o.samples = 2000;
    EXPECT_TRUE(residual_suite(build_nondiv(3.0, 16, s), 1, o).pass);
  }
}

TEST(ResidualSuite, CorruptedCoefficientFails) {
  auto inst = build_nondiv(4.0, 64, Stage::full);
  inst.coefficients[Quadrant::I].a12 += 0.1;
  const VerificationReport r = residual_suite(inst, 42);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(max_measured(r), 1e-2);
}

TEST(ResidualSuite, OnePercentMutationOfAnyEntry) {
  const auto inst = build_nondiv(3.0, 16, Stage::full);
  ResidualOptions o;
  o.samples = 2000;
  for (int entry = 0; entry < 4; ++entry) {
    auto m = inst;
    CoeffMatrix& a = m.coefficients[Quadrant::III];
    double* e[] = {&a.a11, &a.a12, &a.a21, &a.a22};
    *e[entry] *= 1.01;
    EXPECT_GT(max_measured(residual_suite(m, 3, o)), 1e-3) << entry;
  }
}

TEST(ResidualSuite, ZeroField) {
  CounterexampleInstance zero;
  zero.kind = InstanceKind::nondiv_full;
  zero.coefficients = QuadrantCoefficients::uniform(Mat2::identity());
  zero.quadrants = stage_quadrants(Stage::full);
  zero.meta.n = 16;
  ResidualOptions o;
  o.samples = 100;
  const VerificationReport r = residual_suite(zero, 1, o);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(max_measured(r), 0.0);
}

TEST(ResidualSuite, SeedDeterminism) {
  const auto inst = build_nondiv(8.0, 16, Stage::full);
  ResidualOptions o;
  o.samples = 500;
  const auto a = residual_suite(inst, 9, o);
  const auto b = residual_suite(inst, 9, o);
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    EXPECT_EQ(a.checks[i].measured, b.checks[i].measured);
    EXPECT_EQ(a.checks[i].location, b.checks[i].location);
  }
}

TEST(ResidualSuite, RejectsDivergenceInstances) {
  EXPECT_THROW(residual_suite(build_ps(kPi / 6, 1.0), 1), ParameterError);
}

TEST(InterfaceSuite, SixthPiAllChecks) {
  const VerificationReport r = interface_flux_suite(build_ps(kPi / 6, 1.0));
  std::size_t jumps = 0;
  for (const auto& c : r.checks) {
    if (c.name == "u_jump" || c.name == "flux_jump") ++jumps;
  }
  EXPECT_EQ(jumps, 24u);
  EXPECT_TRUE(r.pass);
}

TEST(InterfaceSuite, QuarterPiJumpsAtRoundoff) {
  const VerificationReport r = interface_flux_suite(build_ps(kPi / 4, 1.0));
  EXPECT_TRUE(r.pass);
  for (const auto& c : r.checks) {
    if (c.name == "u_jump" || c.name == "flux_jump") EXPECT_LE(c.measured, 1e-15) << c.location;
  }
}

TEST(InterfaceSuite, CorruptedKFailsFluxEverywhere) {
  PsParams p = PsParams::from_theta0(kPi / 6);
  p.K *= 1.01;
  const VerificationReport r = interface_flux_suite(build_ps(p, 1.0));
  EXPECT_FALSE(r.pass);
  std::set<std::string> angles;
  for (const auto& c : r.checks) {
    if (c.name == "flux_jump" && !c.pass) angles.insert(c.location.substr(0, c.location.find(' ')));
  }
  EXPECT_EQ(angles.size(), 4u);
}

TEST(InterfaceSuite, CorruptedExponentFails) {
  PsParams p = PsParams::from_theta0(kPi / 6);
  p.nu *= 1.01;
  EXPECT_FALSE(interface_flux_suite(build_ps(p, 1.0)).pass);
}

TEST(DerivativeCheck, CornerHarmonic) {
  const CornerParams c = omega_for_p(4.0);
  const VerificationReport r = derivative_check(corner_harmonic(c), 100, 42, SampleRegion{0.05, 3.0, 0.0, c.omega});
  EXPECT_TRUE(r.pass);
}

TEST(DerivativeCheck, ComposedField) {
  const auto inst = build_nondiv(3.0, 16, Stage::full);
  EXPECT_TRUE(derivative_check(inst.solution, 100, 7).pass);
  EXPECT_TRUE(derivative_check(inst.rhs.f, 100, 8).pass);
}

TEST(DerivativeCheck, LinearFieldIsExact) {
  const VerificationReport r = derivative_check(2.0 * coordinate(1) - 5.0 * coordinate(2) + constant(1.0), 50, 1);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.checks[0].measured, 1e-10);
  EXPECT_EQ(r.checks[1].measured, 0.0);
}

TEST(Rational, Arithmetic) {
  const Rational a(6, -4);
  EXPECT_EQ(a.num(), -3);
  EXPECT_EQ(a.den(), 2);
  EXPECT_EQ(a + Rational(1, 2), Rational(-1));
  EXPECT_EQ(a * Rational(2, 3), Rational(-1));
  EXPECT_EQ(Rational(1) / Rational(1, 3), Rational(3));
  EXPECT_TRUE(Rational(1, 3) < Rational(1, 2));
  EXPECT_EQ(Rational(7, 3).str(), "7/3");
  EXPECT_THROW(Rational(1, 0), ParameterError);
  EXPECT_THROW(Rational(1) / Rational(0), ParameterError);
  EXPECT_EQ(*Rational::approximate(4.0 * (kPi / 6) / kPi), Rational(2, 3));
  EXPECT_EQ(*Rational::approximate(5.75), Rational(23, 4));
  EXPECT_FALSE(Rational::approximate(kPi, 1000).has_value());
}

TEST(Integrability, Examples) {
  for (std::int64_t p : {3, 4, 8, 100}) {
    const Rational alpha = corner_hessian_exponent(Rational(p));
    EXPECT_EQ(Rational(p) * alpha + Rational(1), Rational(-1));
    EXPECT_EQ(integrability_threshold(alpha, Rational(p)), Integrability::infinite);
  }
  const Rational nu(2, 3);
  EXPECT_EQ(ps_gradient_threshold(nu), Rational(6));
  const Rational alpha = nu - Rational(1);
  EXPECT_EQ(integrability_threshold(alpha, Rational(599, 100)), Integrability::finite);
  EXPECT_EQ(integrability_threshold(alpha, Rational(6)), Integrability::infinite);
  EXPECT_EQ(integrability_threshold(alpha, Rational(601, 100)), Integrability::infinite);
  EXPECT_EQ(integrability_threshold(Rational(0), Rational(1000)), Integrability::finite);
  EXPECT_THROW(integrability_threshold(Rational(0), Rational(1)), ParameterError);
  EXPECT_THROW(ps_gradient_threshold(Rational(1)), ParameterError);
}

TEST(Integrability, NumericAgreesOnSweep) {
  int count = 0;
  for (int k = 0; k < 25; ++k) {
    const Rational p(3 + k % 7, 1 + k % 2);
    for (int sign : {-1, 1}) {
      const Rational gap = Rational(sign) * (Rational(1, 20) + Rational(k, 25));
      const Rational a = (gap - Rational(2)) / p;
      const NumericIntegrability n = integrability_numeric(a.value(), p.value());
      EXPECT_EQ(n.classification, integrability_threshold(a, p)) << a.str() << " " << p.str();
      ++count;
    }
  }
  EXPECT_EQ(count, 50);
}

TEST(Integrability, NumericPartialIntegrals) {
  const NumericIntegrability n = integrability_numeric(-0.5, 3.0);
  ASSERT_EQ(n.eps.size(), 7u);
  ASSERT_EQ(n.increments.size(), 6u);
  // Integral of r^-0.5 over [eps, 1] is 2 (1 - sqrt(eps)).
  for (std::size_t k = 0; k < n.eps.size(); ++k) {
    EXPECT_NEAR(n.partial[k], 2.0 * (1.0 - std::sqrt(n.eps[k])), 1e-9);
  }
  EXPECT_THROW(integrability_numeric(0.0, 1.0), ParameterError);
}

TEST(QuadratureSuite, Passes) {
  const VerificationReport r = quadrature_suite();
  EXPECT_TRUE(r.pass);
  EXPECT_GE(r.checks.size(), 17u);
}
