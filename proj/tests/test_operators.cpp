#include <gtest/gtest.h>

#include <cmath>

#include "cx/errors.hpp"
#include "cx/operators.hpp"

using namespace cx;

TEST(Shear, MapsSectorToQuadrant) {
  const double omega = 2.0 * kPi / 3.0;
  const Mat2 a = shear_matrix(omega);
  EXPECT_DOUBLE_EQ(a.det(), 1.0);
  const Point edge = a.apply(Point::polar(1.0, omega));
  EXPECT_NEAR(edge.x1, 0.0, 1e-15);
  EXPECT_GT(edge.x2, 0.0);
  const Point base = a.apply(Point{1.0, 0.0});
  EXPECT_EQ(base.x2, 0.0);
  EXPECT_EQ(shear_matrix(0.5 * kPi), Mat2::identity());
  EXPECT_THROW(shear_matrix(0.0), ParameterError);
  EXPECT_THROW(shear_matrix(kPi), ParameterError);
}

TEST(Pushforward, TwoThirdsPi) {
  const CoeffMatrix a = pushforward_coefficients(shear_matrix(2.0 * kPi / 3.0));
  const double s = 1.0 / std::sqrt(3.0);
  EXPECT_NEAR(a.a11, 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(a.a12, s, 1e-14);
  EXPECT_NEAR(a.a21, s, 1e-14);
  EXPECT_EQ(a.a22, 1.0);
  EXPECT_THROW(pushforward_coefficients(Mat2{}), ParameterError);
}

TEST(Pushforward, TurnsLaplacianIntoConstantCoefficients) {
  // a^{ij} D_ij (v o A^{-1}) = (Delta v) o A^{-1} for v = x^3 y.
  const Mat2 a = shear_matrix(1.1);
  const CoeffMatrix m = pushforward_coefficients(a);
  const ScalarField v = coordinate(1) * coordinate(1) * coordinate(1) * coordinate(2);
  const ScalarField u = affine_pullback(v, a);
  const ScalarField lap = laplacian(v);
  const QuadrantCoefficients uniform = QuadrantCoefficients::uniform(m);
  for (Point z : {Point{0.3, 0.7}, Point{1.1, 0.2}, Point{2.0, 1.5}}) {
    const double lhs = apply_nondiv(uniform, u, z).value;
    const double rhs = lap.value(a.inverse().apply(z));
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST(QuadrantCoefficients, SignLaw) {
  const CoeffMatrix a = pushforward_coefficients(shear_matrix(2.0 * kPi / 3.0));
  const QuadrantCoefficients q = quadrant_coefficients(a);
  EXPECT_EQ(q[Quadrant::I].a12, a.a12);
  EXPECT_EQ(q[Quadrant::II].a12, -a.a12);
  EXPECT_EQ(q[Quadrant::III].a12, a.a12);
  EXPECT_EQ(q[Quadrant::IV].a21, -a.a21);
  for (Quadrant k : {Quadrant::I, Quadrant::II, Quadrant::III, Quadrant::IV}) {
    EXPECT_EQ(q[k].a11, a.a11);
    EXPECT_EQ(q[k].a22, 1.0);
  }
  EXPECT_EQ(&q.at({0.0, -1.0}), &q[Quadrant::IV]);
  EXPECT_THROW(quadrant_coefficients(CoeffMatrix{1.0, 2.0, 2.0, 1.0}), NonEllipticError);
}

TEST(Ellipticity, TwoThirdsPiDelta) {
  const QuadrantCoefficients q = quadrant_coefficients(pushforward_coefficients(shear_matrix(2.0 * kPi / 3.0)));
  const Ellipticity e = ellipticity_constant(q);
  EXPECT_NEAR(e.delta, (7.0 - std::sqrt(13.0)) / 6.0, 1e-12);
  EXPECT_TRUE(e.entries_bounded);
  EXPECT_THROW(ellipticity_constant(QuadrantCoefficients::uniform(CoeffMatrix{1.0, 0.0, 0.0, -1.0})),
               NonEllipticError);
}

TEST(ApplyNondiv, ReportsInterfaces) {
  const QuadrantCoefficients q = QuadrantCoefficients::uniform(Mat2::identity());
  const ScalarField f = coordinate(1) * coordinate(1) + 3.0 * coordinate(2) * coordinate(2);
  EXPECT_DOUBLE_EQ(apply_nondiv(q, f, {0.4, 0.2}).value, 8.0);
  EXPECT_FALSE(apply_nondiv(q, f, {0.4, 0.2}).on_interface);
  EXPECT_TRUE(apply_nondiv(q, f, {0.0, 0.2}).on_interface);
}

TEST(SeededBumps, DeterministicAndInRange) {
  const auto a = seeded_bumps(50, 7);
  const auto b = seeded_bumps(50, 7);
  const auto c = seeded_bumps(50, 8);
  ASSERT_EQ(a.size(), 50u);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].center.x1, b[i].center.x1);
    EXPECT_EQ(a[i].radius, b[i].radius);
    EXPECT_LE(std::abs(a[i].center.x1), 2.0);
    EXPECT_GE(a[i].radius, 0.5);
    EXPECT_LE(a[i].radius, 1.5);
    differs = differs || a[i].radius != c[i].radius;
  }
  EXPECT_TRUE(differs);
}

TEST(WeakResidual, SmoothFieldAgainstItsLaplacian) {
  // D_i D_i u = f strongly, so R = 0 with g = 0.
  const ScalarField u = coordinate(1) * coordinate(1) * coordinate(2) + coordinate(2) * coordinate(2);
  const DivergenceRhs rhs{constant(0.0), constant(0.0), laplacian(u)};
  const QuadrantCoefficients id = QuadrantCoefficients::uniform(Mat2::identity());
  for (const BumpTestFunction& b : seeded_bumps(4, 3)) {
    const QuadratureResult r = weak_residual(id, u, rhs, b, Tolerance(1e-10));
    EXPECT_LE(std::abs(r.value), 10.0 * r.error_estimate + 1e-12);
  }
  // Wrong sign on f is detected.
  const DivergenceRhs wrong{constant(0.0), constant(0.0), -1.0 * laplacian(u)};
  const BumpTestFunction b{Point{0.2, 0.1}, 1.0};
  EXPECT_GT(std::abs(weak_residual(id, u, wrong, b, Tolerance(1e-10)).value), 1e-2);
}

TEST(WeakResidual, DivergenceOfVectorField) {
  // u = 0, g = (x1 x2, x2^2): R = -integral g . D phi = integral (div g) phi.
  const DivergenceRhs rhs{coordinate(1) * coordinate(2), coordinate(2) * coordinate(2), constant(0.0)};
  const BumpTestFunction b{Point{0.5, -0.2}, 0.8};
  const QuadrantCoefficients id = QuadrantCoefficients::uniform(Mat2::identity());
  const QuadratureResult r = weak_residual(id, constant(0.0), rhs, b, Tolerance(1e-11));
  const ScalarField div_g = 3.0 * coordinate(2);
  const ScalarField phi = b.field();
  const QuadratureResult ref =
      integrate([&](Point x) { return div_g.value(x) * phi.value(x); }, bump_domain(b, phi), Tolerance(1e-11));
  EXPECT_NEAR(r.value, ref.value, 1e-9);
}

TEST(WeakResidual, ZeroOutsideSupport) {
  const BumpTestFunction b{Point{1.0, 1.0}, 0.5};
  const ScalarField phi = b.field();
  EXPECT_EQ(phi.value({2.0, 2.0}), 0.0);
  const Domain2D d = bump_domain(b, phi);
  EXPECT_GT(d.r_lo, 0.0);
}
