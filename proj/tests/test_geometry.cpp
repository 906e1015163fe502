#include <gtest/gtest.h>

#include <cmath>

#include "cx/errors.hpp"
#include "cx/geometry.hpp"

using namespace cx;

TEST(Geometry, QuadrantTieBreak) {
  EXPECT_EQ(quadrant_of({1.0, 1.0}), Quadrant::I);
  EXPECT_EQ(quadrant_of({-1.0, 1.0}), Quadrant::II);
  EXPECT_EQ(quadrant_of({-1.0, -1.0}), Quadrant::III);
  EXPECT_EQ(quadrant_of({1.0, -1.0}), Quadrant::IV);
  // Zero coordinates count as positive, x1 first.
  EXPECT_EQ(quadrant_of({0.0, -1.0}), Quadrant::IV);
  EXPECT_EQ(quadrant_of({-1.0, 0.0}), Quadrant::II);
  EXPECT_EQ(quadrant_of({0.0, 0.0}), Quadrant::I);
  EXPECT_TRUE(on_axis({0.0, 3.0}));
  EXPECT_FALSE(on_axis({1e-300, 3.0}));
}

TEST(Geometry, QuadrantSigns) {
  EXPECT_EQ(quadrant_sign(Quadrant::I), 1.0);
  EXPECT_EQ(quadrant_sign(Quadrant::II), -1.0);
  EXPECT_EQ(quadrant_sign(Quadrant::III), 1.0);
  EXPECT_EQ(quadrant_sign(Quadrant::IV), -1.0);
}

TEST(Geometry, SymmetricEigenvalues) {
  const auto e = symmetric_eigenvalues(Mat2{2.0, 1.0, 1.0, 2.0});
  EXPECT_NEAR(e[0], 1.0, 1e-15);
  EXPECT_NEAR(e[1], 3.0, 1e-15);
  // Only the symmetric part counts.
  const auto f = symmetric_eigenvalues(Mat2{1.0, 0.0, 2.0, 1.0});
  EXPECT_NEAR(f[0], 0.0, 1e-15);
  EXPECT_NEAR(f[1], 2.0, 1e-15);
}

TEST(Geometry, InverseAndErrors) {
  const Mat2 a{1.0, -0.5, 0.0, 1.0};
  const Mat2 i = a * a.inverse();
  EXPECT_NEAR(i.a11, 1.0, 1e-15);
  EXPECT_NEAR(i.a12, 0.0, 1e-15);
  EXPECT_THROW((Mat2{1.0, 2.0, 2.0, 4.0}.inverse()), ParameterError);
}

TEST(Geometry, PolarRoundTrip) {
  const Point x = Point::polar(2.0, 2.5);
  EXPECT_NEAR(x.norm(), 2.0, 1e-15);
  EXPECT_NEAR(x.angle(), 2.5, 1e-15);
  EXPECT_NEAR(wrap_angle(-0.5), 2.0 * kPi - 0.5, 1e-15);
}
