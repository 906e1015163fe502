#pragma once

// Truncated Taylor arithmetic in one and two variables.
//
// A Jet stores the Taylor coefficients c(i,j) of a function around a base
// point, f(x0 + dx, y0 + dy) = sum c(i,j) dx^i dy^j for i + j <= order.
// All operations are exact polynomial manipulations truncated at the order,
// so derivatives obtained from a Jet carry no discretization error.

#include <array>
#include <cstddef>
#include <span>

namespace cx {

inline constexpr int kMaxJetOrder = 6;

/// Univariate truncated power series s(t0 + dt) = sum c[k] dt^k.
class Series {
 public:
  static constexpr int kCapacity = kMaxJetOrder + 1;

  explicit Series(int order = 2);
  static Series constant(double c, int order);
  /// t0 + dt
  static Series variable(double t0, int order);

  int order() const { return order_; }
  double operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  double& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  double value() const { return c_[0]; }
  /// k-th derivative, c[k] * k!
  double derivative(int k) const;
  std::span<const double> coefficients() const {
    return {c_.data(), static_cast<std::size_t>(order_ + 1)};
  }

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator+=(double s);
  Series& operator*=(double s);
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator+(Series a, double s) { return a += s; }
  friend Series operator-(Series a, double s) { return a += -s; }
  friend Series operator+(double s, Series a) { return a += s; }
  friend Series operator-(double s, Series a) {
    a *= -1.0;
    return a += s;
  }
  friend Series operator*(Series a, double s) { return a *= s; }
  friend Series operator*(double s, Series a) { return a *= s; }
  friend Series operator*(const Series& a, const Series& b);

  /// outer(this): outer holds the Taylor coefficients of the outer function at
  /// this->value().
  Series compose(std::span<const double> outer) const;

 private:
  int order_;
  std::array<double, kCapacity> c_{};
};

Series reciprocal(const Series& s);
Series exp(const Series& s);
Series sqrt(const Series& s);
Series operator/(const Series& a, const Series& b);

/// Taylor coefficients of common functions at x0, up to `order`.
namespace taylor {
std::array<double, kMaxJetOrder + 1> exp(double x0, int order);
std::array<double, kMaxJetOrder + 1> reciprocal(double x0, int order);
std::array<double, kMaxJetOrder + 1> power(double x0, double mu, int order);
}  // namespace taylor

/// Bivariate truncated Taylor polynomial.
class Jet {
 public:
  static constexpr int kCapacity = (kMaxJetOrder + 1) * (kMaxJetOrder + 2) / 2;

  explicit Jet(int order = 2);
  static Jet constant(double c, int order);
  /// The coordinate function x_axis around x0 (axis is 0 or 1).
  static Jet coordinate(double x0, int axis, int order);

  int order() const { return order_; }
  double coeff(int i, int j) const { return c_[index(i, j)]; }
  double& coeff(int i, int j) { return c_[index(i, j)]; }
  double value() const { return c_[0]; }
  /// d^(i+j) f / dx^i dy^j at the base point.
  double derivative(int i, int j) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);
  Jet& operator+=(double s);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b);

  /// outer(this) with outer's Taylor coefficients taken at this->value().
  Jet compose(std::span<const double> outer) const;
  /// g(d) = f(B d): substitutes a linear change of the increment variables.
  Jet linear_substitution(double b11, double b12, double b21, double b22) const;
  /// Derivative in x (axis 0) or y (axis 1); the result has order() - 1.
  Jet partial(int axis) const;
  /// Same polynomial re-truncated at a lower order.
  Jet truncated(int order) const;

  static constexpr std::size_t index(int i, int j) {
    const int d = i + j;
    return static_cast<std::size_t>(d * (d + 1) / 2 + j);
  }

 private:
  int order_;
  std::array<double, kCapacity> c_{};
};

}  // namespace cx
