#include <gtest/gtest.h>

#include <cmath>

#include "cx/jet.hpp"

using cx::Jet;
using cx::Series;

TEST(Series, ExpCoefficientsAreScaledFactorials) {
  const Series e = exp(Series::variable(0.3, 6));
  double fact = 1.0;
  for (int k = 0; k <= 6; ++k) {
    if (k > 0) fact *= k;
    EXPECT_NEAR(e[k], std::exp(0.3) / fact, 1e-15);
  }
}

TEST(Series, ReciprocalTimesSelfIsOne) {
  const Series s = Series::variable(0.7, 6) * Series::variable(0.7, 6) + 2.0;
  const Series one = s * reciprocal(s);
  EXPECT_NEAR(one[0], 1.0, 1e-15);
  for (int k = 1; k <= 6; ++k) EXPECT_NEAR(one[k], 0.0, 1e-14);
}

TEST(Series, SqrtSquaresBack) {
  const Series s = Series::variable(2.5, 5);
  const Series r = sqrt(s);
  const Series back = r * r;
  EXPECT_NEAR(back[0], 2.5, 1e-14);
  EXPECT_NEAR(back[1], 1.0, 1e-14);
  for (int k = 2; k <= 5; ++k) EXPECT_NEAR(back[k], 0.0, 1e-14);
}

TEST(Series, PowerDerivatives) {
  // d^k/dx^k x^mu at x0
  const double mu = 1.5;
  const double x0 = 0.4;
  const auto c = cx::taylor::power(x0, mu, 3);
  EXPECT_NEAR(c[0], std::pow(x0, mu), 1e-15);
  EXPECT_NEAR(c[1], mu * std::pow(x0, mu - 1), 1e-15);
  EXPECT_NEAR(c[2] * 2.0, mu * (mu - 1) * std::pow(x0, mu - 2), 1e-14);
  EXPECT_NEAR(c[3] * 6.0, mu * (mu - 1) * (mu - 2) * std::pow(x0, mu - 3), 1e-13);
}

TEST(Series, DivisionMatchesQuotientRule) {
  const Series x = Series::variable(1.2, 2);
  const Series q = (x * x) / (x + 1.0);
  const double f1 = (1.2 * 1.2 + 2 * 1.2) / (2.2 * 2.2);
  EXPECT_NEAR(q.value(), 1.44 / 2.2, 1e-15);
  EXPECT_NEAR(q.derivative(1), f1, 1e-14);
}

TEST(Jet, ProductOfCoordinates) {
  const Jet x = Jet::coordinate(2.0, 0, 2);
  const Jet y = Jet::coordinate(-1.0, 1, 2);
  const Jet f = x * x * y;
  EXPECT_DOUBLE_EQ(f.value(), -4.0);
  EXPECT_DOUBLE_EQ(f.derivative(1, 0), -4.0);
  EXPECT_DOUBLE_EQ(f.derivative(0, 1), 4.0);
  EXPECT_DOUBLE_EQ(f.derivative(2, 0), -2.0);
  EXPECT_DOUBLE_EQ(f.derivative(1, 1), 4.0);
  EXPECT_DOUBLE_EQ(f.derivative(0, 2), 0.0);
}

TEST(Jet, ComposeExpOfProduct) {
  const double x0 = 0.5;
  const double y0 = -0.8;
  const Jet xy = Jet::coordinate(x0, 0, 3) * Jet::coordinate(y0, 1, 3);
  const Jet f = xy.compose(cx::taylor::exp(xy.value(), 3));
  const double e = std::exp(x0 * y0);
  EXPECT_NEAR(f.derivative(1, 0), y0 * e, 1e-15);
  EXPECT_NEAR(f.derivative(1, 1), (1 + x0 * y0) * e, 1e-15);
  EXPECT_NEAR(f.derivative(2, 1), (2 * y0 + x0 * y0 * y0) * e, 1e-14);
}

TEST(Jet, LinearSubstitutionChainRule) {
  // f(x, y) = x^2 y, g(d) = f(B d) at the origin of d around (1, 2).
  const Jet f = Jet::coordinate(1.0, 0, 2) * Jet::coordinate(1.0, 0, 2) * Jet::coordinate(2.0, 1, 2);
  const Jet g = f.linear_substitution(2.0, 1.0, 0.0, 3.0);
  // grad g = B^T grad f, grad f = (2xy, x^2) = (4, 1)
  EXPECT_NEAR(g.derivative(1, 0), 2.0 * 4.0, 1e-14);
  EXPECT_NEAR(g.derivative(0, 1), 1.0 * 4.0 + 3.0 * 1.0, 1e-14);
}

TEST(Jet, PartialLowersOrder) {
  const Jet x = Jet::coordinate(1.0, 0, 3);
  const Jet f = x * x * x;
  const Jet d = f.partial(0);
  EXPECT_EQ(d.order(), 2);
  EXPECT_DOUBLE_EQ(d.value(), 3.0);
  EXPECT_DOUBLE_EQ(d.derivative(1, 0), 6.0);
  EXPECT_DOUBLE_EQ(d.derivative(2, 0), 6.0);
}

TEST(Jet, TruncatedDropsHighTerms) {
  const Jet x = Jet::coordinate(1.0, 0, 4);
  const Jet t = (x * x * x * x).truncated(1);
  EXPECT_EQ(t.order(), 1);
  EXPECT_DOUBLE_EQ(t.derivative(1, 0), 4.0);
}
