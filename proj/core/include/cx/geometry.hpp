#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace cx {

struct Point {
  double x1 = 0.0;
  double x2 = 0.0;

  double norm() const { return std::hypot(x1, x2); }
  double angle() const { return std::atan2(x2, x1); }
  bool finite() const { return std::isfinite(x1) && std::isfinite(x2); }
  friend Point operator+(Point a, Point b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
  friend Point operator-(Point a, Point b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
  friend Point operator*(double s, Point a) { return {s * a.x1, s * a.x2}; }
  friend bool operator==(const Point&, const Point&) = default;

  static Point polar(double r, double theta) { return {r * std::cos(theta), r * std::sin(theta)}; }
};

/// General (not necessarily symmetric) 2x2 matrix, row-major.
struct Mat2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a21 = 0.0;
  double a22 = 0.0;

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  double det() const { return a11 * a22 - a12 * a21; }
  double trace() const { return a11 + a22; }
  Mat2 transpose() const { return {a11, a21, a12, a22}; }
  /// Throws ParameterError when det == 0.
  Mat2 inverse() const;
  Point apply(Point x) const { return {a11 * x.x1 + a12 * x.x2, a21 * x.x1 + a22 * x.x2}; }
  double max_abs_entry() const;

  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
  }
  friend Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
  }
  friend Mat2 operator*(double s, const Mat2& a) { return {s * a.a11, s * a.a12, s * a.a21, s * a.a22}; }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Eigenvalues (ascending) of the symmetric part (M + M^T)/2.
std::array<double, 2> symmetric_eigenvalues(const Mat2& m);

/// Open quadrants, numbered counter-clockwise from the positive cone.
enum class Quadrant { I = 0, II = 1, III = 2, IV = 3 };

/// Quadrant containing x. Points on an axis go to the side where the
/// coordinate is treated as positive: x1 = 0 counts as x1 > 0, then x2 = 0
/// counts as x2 > 0.
constexpr Quadrant quadrant_of(Point x) {
  const bool right = x.x1 >= 0.0;
  const bool upper = x.x2 >= 0.0;
  if (right) return upper ? Quadrant::I : Quadrant::IV;
  return upper ? Quadrant::II : Quadrant::III;
}

constexpr bool on_axis(Point x) { return x.x1 == 0.0 || x.x2 == 0.0; }

/// sign(x1) * sign(x2) with the same axis convention as quadrant_of.
constexpr double quadrant_sign(Quadrant q) {
  return (q == Quadrant::I || q == Quadrant::III) ? 1.0 : -1.0;
}

constexpr int index_of(Quadrant q) { return static_cast<int>(q); }

const char* to_string(Quadrant q);

inline constexpr double kPi = std::numbers::pi;

/// Angle reduced to [0, 2 pi).
double wrap_angle(double theta);

}  // namespace cx
