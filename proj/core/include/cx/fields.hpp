#pragma once

// Scalar fields on the plane with exact jets.
//
// A ScalarField is an immutable expression tree. Every node evaluates a
// truncated Taylor polynomial at a point, so values, gradients and Hessians
// follow the chain and product rules exactly. Fields are cheap to copy
// (shared ownership of the tree) and safe to evaluate from many threads.

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "cx/geometry.hpp"
#include "cx/jet.hpp"

namespace cx {

namespace detail {
class FieldNode;
}

/// Where a field's jets are undefined or change regime.
struct SingularSet {
  /// Jets are undefined at the vertex itself.
  bool singular_vertex = false;
  Point vertex{};
  /// Rays from the vertex (angles in [0, 2pi)): interfaces, boundary rays,
  /// branch cuts. Second derivatives may jump across them.
  std::vector<double> rays;
  /// Circles around the vertex where a smooth field changes regime quickly.
  std::vector<double> radii;

  /// Distance from x to the vertex (when singular or carrying rays) and rays.
  double distance(Point x) const;
  bool empty() const { return !singular_vertex && rays.empty(); }
};

struct FieldJet {
  double value = 0.0;
  std::array<double, 2> gradient{};
  std::array<std::array<double, 2>, 2> hessian{};
  /// True when the point lies on an interface and the one-sided limit
  /// prescribed by quadrant_of() was returned.
  bool on_interface = false;
};

struct TaylorEval {
  Jet jet;
  bool on_interface = false;
};

class ScalarField {
 public:
  /// The zero field.
  ScalarField();
  explicit ScalarField(std::shared_ptr<const detail::FieldNode> node);

  FieldJet jet(Point x) const;
  double value(Point x) const;
  /// Taylor polynomial of the given order at x.
  TaylorEval taylor(Point x, int order) const;

  const SingularSet& singular_set() const;
  bool vanishes_near_vertex() const;
  std::string describe() const;

  const detail::FieldNode& node() const { return *node_; }
  const std::shared_ptr<const detail::FieldNode>& node_ptr() const { return node_; }

 private:
  std::shared_ptr<const detail::FieldNode> node_;
};

/// Exact jets of `field` at x. Throws EvaluationError at a singular vertex or
/// for non-finite input.
FieldJet eval_jet(const ScalarField& field, Point x);

// ------------------------------------------------------------- primitives

ScalarField constant(double c);
/// x1 (coordinate = 1) or x2 (coordinate = 2).
ScalarField coordinate(int coordinate);

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);
/// sum_k weights[k] * terms[k]
ScalarField linear_combination(const std::vector<double>& weights, const std::vector<ScalarField>& terms);

/// u(x) = field(A^{-1} (x - shift)). Throws ParameterError for singular A.
ScalarField affine_pullback(const ScalarField& field, const Mat2& a, Point shift = {});

enum class Parity { odd, even };
/// Coordinate flipped by a reflection: Axis::x2 maps (x1, x2) to (x1, -x2).
enum class Axis { x1 = 1, x2 = 2 };

/// Extension of a field given on {x_axis >= 0} by u(sigma x) = +-u(x).
ScalarField reflect(const ScalarField& field, Axis axis, Parity parity);

/// D_coordinate field, coordinate in {1, 2}.
ScalarField partial(const ScalarField& field, int coordinate);

/// Laplacian built from partial derivatives.
ScalarField laplacian(const ScalarField& field);

// ------------------------------------------------------------- corner harmonic

struct CornerParams {
  /// Opening angle of the sector.
  double omega = 0.0;
  /// pi / omega
  double exponent = 0.0;

  /// Any opening angle in (0, pi); used for checks outside the p > 2 family.
  static CornerParams from_angle(double omega);
};

/// omega = pi p / (2p - 2), exponent = (2p - 2) / p. Requires p > 2.
CornerParams omega_for_p(double p);

/// v = r^(pi/omega) sin(pi theta / omega), the imaginary part of z^(pi/omega).
ScalarField corner_harmonic(const CornerParams& params);

/// Im(c * (e^{-i k pi/2} z)^mu): the principal power taken after rotating
/// by k quarter turns, so its branch cut is the ray at angle k pi/2 + pi.
ScalarField holomorphic_power(double mu, std::array<double, 2> c, int quarter_turns);

// ------------------------------------------------------------- cutoffs

struct SmoothStep {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// eta(r) = f(r) / (f(r) + f(1 - r)), f(x) = exp(-1/x) for x > 0, 0 otherwise.
SmoothStep smooth_step(double r);
/// Taylor series of eta around r0.
Series smooth_step_series(double r0, int order);

struct CutoffParams {
  int n = 2;

  explicit CutoffParams(int n);
  double inner_zero() const { return 1.0 / n; }
  double inner_one() const { return 2.0 / n; }
  static constexpr double outer_one() { return 2.0; }
  static constexpr double outer_zero() { return 3.0; }
};

/// zeta_n(x) = eta(n(|x| - 1/n)) eta(3 - |x|).
ScalarField cutoff(const CutoffParams& params);

/// exp(1 - 1/(1 - |x - c|^2 / rho^2)) inside the disk, 0 outside.
ScalarField bump(Point center, double radius);

struct TruncatedCorner {
  ScalarField v_n;
  /// Delta v_n = 2 Dv . D zeta_n + v Delta zeta_n
  ScalarField h_n;
};

TruncatedCorner truncated_corner(const CornerParams& params, int n);

// ------------------------------------------------------------- piecewise-polar profile

struct PsParams {
  double theta0 = 0.0;
  double nu = 0.0;
  double K = 0.0;

  /// nu = 4 theta0 / pi, K = 1 / tan^2 theta0, theta0 in (0, pi/2).
  static PsParams from_theta0(double theta0);
};

/// u = r^nu w(theta) with four angular branches, one per quadrant.
class PsProfile {
 public:
  explicit PsProfile(const PsParams& params);

  const PsParams& params() const { return params_; }
  const ScalarField& u() const { return u_; }

  /// Branch k covers [k pi/2, (k+1) pi/2]; formulas extend smoothly past it.
  double w(int branch, double theta) const;
  double w_prime(int branch, double theta) const;
  double w_second(int branch, double theta) const;
  /// a(theta) on branch k: 1 on I and III, K on II and IV.
  double coefficient(int branch) const;

 private:
  PsParams params_;
  ScalarField u_;
};

/// Throws ParameterError unless theta0 is in (0, pi/2).
PsProfile ps_profile(double theta0);

}  // namespace cx
