#include "cx/jet.hpp"

#include <cmath>

#include "cx/errors.hpp"

namespace cx {

namespace {

void check_order(int order) {
  if (order < 0 || order > kMaxJetOrder) {
    throw ParameterError("jet order " + std::to_string(order) +
                         " outside [0, " + std::to_string(kMaxJetOrder) + "]");
  }
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

// ---------------------------------------------------------------- Series

Series::Series(int order) : order_(order) { check_order(order); }

Series Series::constant(double c, int order) {
  Series s(order);
  s.c_[0] = c;
  return s;
}

Series Series::variable(double t0, int order) {
  Series s(order);
  s.c_[0] = t0;
  if (order >= 1) s.c_[1] = 1.0;
  return s;
}

double Series::derivative(int k) const { return c_[static_cast<std::size_t>(k)] * factorial(k); }

Series& Series::operator+=(const Series& o) {
  for (int k = 0; k <= order_; ++k) (*this)[k] += o[k];
  return *this;
}

Series& Series::operator-=(const Series& o) {
  for (int k = 0; k <= order_; ++k) (*this)[k] -= o[k];
  return *this;
}

Series& Series::operator+=(double s) {
  c_[0] += s;
  return *this;
}

Series& Series::operator*=(double s) {
  for (int k = 0; k <= order_; ++k) (*this)[k] *= s;
  return *this;
}

Series operator*(const Series& a, const Series& b) {
  Series r(a.order());
  for (int i = 0; i <= a.order(); ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; i + j <= a.order(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Series Series::compose(std::span<const double> outer) const {
  Series h = *this;
  h[0] = 0.0;
  Series r = Series::constant(outer[static_cast<std::size_t>(order_)], order_);
  for (int k = order_ - 1; k >= 0; --k) {
    r = r * h;
    r[0] += outer[static_cast<std::size_t>(k)];
  }
  return r;
}

Series reciprocal(const Series& s) {
  const auto c = taylor::reciprocal(s.value(), s.order());
  return s.compose(c);
}

Series exp(const Series& s) {
  const auto c = taylor::exp(s.value(), s.order());
  return s.compose(c);
}

Series sqrt(const Series& s) {
  const auto c = taylor::power(s.value(), 0.5, s.order());
  return s.compose(c);
}

Series operator/(const Series& a, const Series& b) { return a * reciprocal(b); }

namespace taylor {

std::array<double, kMaxJetOrder + 1> exp(double x0, int order) {
  std::array<double, kMaxJetOrder + 1> c{};
  const double e = std::exp(x0);
  double inv_fact = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) inv_fact /= k;
    c[static_cast<std::size_t>(k)] = e * inv_fact;
  }
  return c;
}

std::array<double, kMaxJetOrder + 1> reciprocal(double x0, int order) {
  if (x0 == 0.0) throw EvaluationError("reciprocal of a series with zero constant term");
  std::array<double, kMaxJetOrder + 1> c{};
  const double inv = 1.0 / x0;
  double term = inv;
  for (int k = 0; k <= order; ++k) {
    c[static_cast<std::size_t>(k)] = term;
    term *= -inv;
  }
  return c;
}

std::array<double, kMaxJetOrder + 1> power(double x0, double mu, int order) {
  // binom(mu, k) x0^(mu - k)
  std::array<double, kMaxJetOrder + 1> c{};
  double binom = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) binom *= (mu - (k - 1)) / k;
    if (binom == 0.0) break;
    if (x0 == 0.0) throw EvaluationError("power series expanded at zero");
    c[static_cast<std::size_t>(k)] = binom * std::pow(x0, mu - k);
  }
  return c;
}

}  // namespace taylor

// ---------------------------------------------------------------- Jet

Jet::Jet(int order) : order_(order) { check_order(order); }

Jet Jet::constant(double c, int order) {
  Jet j(order);
  j.c_[0] = c;
  return j;
}

Jet Jet::coordinate(double x0, int axis, int order) {
  Jet j(order);
  j.c_[0] = x0;
  if (order >= 1) j.c_[axis == 0 ? index(1, 0) : index(0, 1)] = 1.0;
  return j;
}

double Jet::derivative(int i, int j) const { return coeff(i, j) * factorial(i) * factorial(j); }

Jet& Jet::operator+=(const Jet& o) {
  const std::size_t n = index(0, order_) + 1;
  for (std::size_t k = 0; k < n; ++k) c_[k] += o.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  const std::size_t n = index(0, order_) + 1;
  for (std::size_t k = 0; k < n; ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet& Jet::operator*=(double s) {
  const std::size_t n = index(0, order_) + 1;
  for (std::size_t k = 0; k < n; ++k) c_[k] *= s;
  return *this;
}

Jet& Jet::operator+=(double s) {
  c_[0] += s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  const int n = a.order();
  Jet r(n);
  for (int d1 = 0; d1 <= n; ++d1) {
    for (int j1 = 0; j1 <= d1; ++j1) {
      const double av = a.coeff(d1 - j1, j1);
      if (av == 0.0) continue;
      for (int d2 = 0; d1 + d2 <= n; ++d2) {
        for (int j2 = 0; j2 <= d2; ++j2) {
          r.coeff(d1 - j1 + d2 - j2, j1 + j2) += av * b.coeff(d2 - j2, j2);
        }
      }
    }
  }
  return r;
}

Jet Jet::compose(std::span<const double> outer) const {
  Jet h = *this;
  h.c_[0] = 0.0;
  Jet r = Jet::constant(outer[static_cast<std::size_t>(order_)], order_);
  for (int k = order_ - 1; k >= 0; --k) {
    r = r * h;
    r.c_[0] += outer[static_cast<std::size_t>(k)];
  }
  return r;
}

Jet Jet::linear_substitution(double b11, double b12, double b21, double b22) const {
  // f(B d) = sum c(i,j) L1^i L2^j with L1 = b11 dx + b12 dy, L2 = b21 dx + b22 dy.
  const int n = order_;
  Jet l1(n), l2(n);
  if (n >= 1) {
    l1.coeff(1, 0) = b11;
    l1.coeff(0, 1) = b12;
    l2.coeff(1, 0) = b21;
    l2.coeff(0, 1) = b22;
  }
  std::array<Jet, kMaxJetOrder + 1> p1{Jet(n), Jet(n), Jet(n), Jet(n), Jet(n), Jet(n), Jet(n)};
  std::array<Jet, kMaxJetOrder + 1> p2 = p1;
  p1[0] = Jet::constant(1.0, n);
  p2[0] = Jet::constant(1.0, n);
  for (int k = 1; k <= n; ++k) {
    p1[static_cast<std::size_t>(k)] = p1[static_cast<std::size_t>(k - 1)] * l1;
    p2[static_cast<std::size_t>(k)] = p2[static_cast<std::size_t>(k - 1)] * l2;
  }
  Jet r(n);
  for (int d = 0; d <= n; ++d) {
    for (int j = 0; j <= d; ++j) {
      const double c = coeff(d - j, j);
      if (c == 0.0) continue;
      r += c * (p1[static_cast<std::size_t>(d - j)] * p2[static_cast<std::size_t>(j)]);
    }
  }
  return r;
}

Jet Jet::partial(int axis) const {
  if (order_ == 0) throw EvaluationError("partial derivative of an order-0 jet");
  Jet r(order_ - 1);
  for (int d = 0; d < order_; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      r.coeff(i, j) = axis == 0 ? (i + 1) * coeff(i + 1, j) : (j + 1) * coeff(i, j + 1);
    }
  }
  return r;
}

Jet Jet::truncated(int order) const {
  Jet r(order);
  const std::size_t n = index(0, order) + 1;
  for (std::size_t k = 0; k < n; ++k) r.c_[k] = c_[k];
  return r;
}

}  // namespace cx
