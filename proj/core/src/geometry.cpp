#include "cx/geometry.hpp"

#include <algorithm>

#include "cx/errors.hpp"

namespace cx {

Mat2 Mat2::inverse() const {
  const double d = det();
  if (d == 0.0 || !std::isfinite(d)) throw ParameterError("matrix is singular");
  return {a22 / d, -a12 / d, -a21 / d, a11 / d};
}

double Mat2::max_abs_entry() const {
  return std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
}

std::array<double, 2> symmetric_eigenvalues(const Mat2& m) {
  const double s11 = m.a11;
  const double s22 = m.a22;
  const double s12 = 0.5 * (m.a12 + m.a21);
  const double mean = 0.5 * (s11 + s22);
  const double radius = std::hypot(0.5 * (s11 - s22), s12);
  // The smaller root via det / larger avoids cancellation when mean >> radius.
  const double hi = mean + radius;
  const double det = s11 * s22 - s12 * s12;
  const double lo = hi != 0.0 ? det / hi : mean - radius;
  return {lo, hi};
}

const char* to_string(Quadrant q) {
  switch (q) {
    case Quadrant::I: return "I";
    case Quadrant::II: return "II";
    case Quadrant::III: return "III";
    case Quadrant::IV: return "IV";
  }
  return "?";
}

double wrap_angle(double theta) {
  double t = std::fmod(theta, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  if (t >= 2.0 * kPi) t = 0.0;
  return t;
}

}  // namespace cx
