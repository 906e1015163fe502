#pragma once

// Polar tensor-product quadrature for integrands that are smooth in the angle
// between rays and power-law-like in the radius.
//
// Angles: fixed 32-point Gauss-Legendre on every angular panel, with a
// 16-point companion rule for the angular error estimate. Radius: globally
// adaptive Gauss-Kronrod (7/15) bisection, geometric initial grading, and
// mandatory splits at radial breakpoints. A panel is bisected along the
// direction with the larger error estimate. Panels never straddle a breakpoint.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cx/fields.hpp"
#include "cx/geometry.hpp"

namespace cx {

enum class DomainKind { sector, annulus, quadrant, truncated_plane };

/// {(r cos t, r sin t) : r_lo < r < r_hi, theta_lo < t < theta_hi}
struct Domain2D {
  DomainKind kind = DomainKind::sector;
  double theta_lo = 0.0;
  double theta_hi = 2.0 * kPi;
  double r_lo = 0.0;
  double r_hi = 1.0;
  /// Angles (any branch) where the integrand may lose smoothness.
  std::vector<double> angular_breaks;
  std::vector<double> radial_breaks;
  /// Each angular panel is further cut into this many equal parts.
  int angular_subdivisions = 1;

  static Domain2D sector(double theta_lo, double theta_hi, double r_hi, double r_lo = 0.0);
  static Domain2D disk(double radius);
  static Domain2D annulus(double r_lo, double r_hi);
  static Domain2D quadrant(Quadrant q, double radius);
  /// |x| < radius, split along both axes.
  static Domain2D truncated_plane(double radius);

  Domain2D& add_angular_breaks(const std::vector<double>& angles);
  Domain2D& add_radial_breaks(const std::vector<double>& radii);
  Domain2D& subdivide_angles(int parts);

  /// Throws ParameterError for empty ranges or bad subdivision counts.
  void validate() const;
  /// Sorted angular panel edges inside [theta_lo, theta_hi].
  std::vector<double> angular_edges() const;
  /// Sorted radial breakpoints inside [r_lo, r_hi], ends included.
  std::vector<double> radial_edges() const;
};

/// Success when error <= max(absolute, relative * |value|).
struct Tolerance {
  double absolute = 1e-8;
  double relative = 0.0;

  Tolerance() = default;
  Tolerance(double abs, double rel = 0.0) : absolute(abs), relative(rel) {}  // NOLINT
  double target(double value) const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t panels = 0;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadratureResult best)
      : std::runtime_error(what), best_(best) {}
  const QuadratureResult& best() const { return best_; }

 private:
  QuadratureResult best_;
};

struct QuadratureOptions {
  std::size_t max_panels = 1'000'000;
  /// 0: use default_thread_count().
  int threads = 0;
};

/// CX_THREADS when set, otherwise the hardware concurrency (at least 1).
int default_thread_count();

using Integrand = std::function<double(Point)>;

/// Integral of f over the domain. Throws QuadratureError on panel-budget
/// exhaustion (carrying the best estimate) or a non-finite integrand value.
QuadratureResult integrate(const Integrand& f, const Domain2D& domain, Tolerance tol,
                           const QuadratureOptions& options = {});

enum class JetKind { value, gradient, hessian };

struct LpNorm {
  double norm = 0.0;
  /// Integral of |jet|^p.
  QuadratureResult pth_power;
};

/// (integral of |jet|^p)^(1/p) with Euclidean (gradient) or Frobenius
/// (Hessian) magnitudes. Breakpoints from the field's singular set are added
/// to the domain when the field's vertex is the origin.
LpNorm lp_norm(const ScalarField& field, JetKind jet, const Domain2D& domain, double p, Tolerance tol,
               const QuadratureOptions& options = {});

/// Domain copy with the field's rays and radii added as breakpoints.
Domain2D with_field_breaks(const Domain2D& domain, const ScalarField& field);

}  // namespace cx
