#include "cx/operators.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cx/errors.hpp"

namespace cx {

QuadrantCoefficients QuadrantCoefficients::uniform(const CoeffMatrix& a) {
  return QuadrantCoefficients({a, a, a, a});
}

Mat2 shear_matrix(double omega) {
  if (!(omega > 0.0 && omega < kPi)) throw ParameterError("shear angle must lie in (0, pi)");
  // cot(pi/2) evaluates to 6e-17 in floating point; pin the symmetric case.
  const double cot = omega == 0.5 * kPi ? 0.0 : std::cos(omega) / std::sin(omega);
  return Mat2{1.0, -cot, 0.0, 1.0};
}

CoeffMatrix pushforward_coefficients(const Mat2& a) {
  if (a.det() == 0.0 || !std::isfinite(a.det())) throw ParameterError("pushforward of a singular matrix");
  const Mat2 m = a * a.transpose();
  // Exactly symmetric regardless of rounding order.
  return CoeffMatrix{m.a11, m.a12, m.a12, m.a22};
}

QuadrantCoefficients quadrant_coefficients(const CoeffMatrix& a) {
  if (symmetric_eigenvalues(a)[0] <= 0.0) throw NonEllipticError("coefficient matrix is not elliptic");
  QuadrantCoefficients q;
  for (Quadrant k : {Quadrant::I, Quadrant::II, Quadrant::III, Quadrant::IV}) {
    const double s = quadrant_sign(k);
    q[k] = CoeffMatrix{a.a11, s * a.a12, s * a.a21, a.a22};
  }
  return q;
}

NondivValue apply_nondiv(const QuadrantCoefficients& coeffs, const ScalarField& field, Point x) {
  const FieldJet j = field.jet(x);
  const CoeffMatrix& a = coeffs.at(x);
  const double v = a.a11 * j.hessian[0][0] + a.a12 * j.hessian[0][1] + a.a21 * j.hessian[1][0] +
                   a.a22 * j.hessian[1][1];
  return NondivValue{v, j.on_interface || on_axis(x)};
}

Ellipticity ellipticity_constant(const QuadrantCoefficients& coeffs) {
  Ellipticity e;
  e.delta = std::numeric_limits<double>::infinity();
  for (Quadrant k : {Quadrant::I, Quadrant::II, Quadrant::III, Quadrant::IV}) {
    e.delta = std::min(e.delta, symmetric_eigenvalues(coeffs[k])[0]);
    e.max_entry = std::max(e.max_entry, coeffs[k].max_abs_entry());
  }
  if (!(e.delta > 0.0)) throw NonEllipticError("coefficients are not uniformly elliptic");
  e.entries_bounded = e.max_entry <= 1.0 / e.delta;
  return e;
}

std::vector<BumpTestFunction> seeded_bumps(std::size_t count, std::uint64_t seed, double center_box, double r_min,
                                           double r_max) {
  std::mt19937_64 gen(seed);
  // 53-bit uniform in [0, 1), independent of the standard library's
  // distribution implementation.
  auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  std::vector<BumpTestFunction> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double c1 = center_box * (2.0 * unit() - 1.0);
    const double c2 = center_box * (2.0 * unit() - 1.0);
    const double rho = r_min + (r_max - r_min) * unit();
    out.push_back({Point{c1, c2}, rho});
  }
  return out;
}

Domain2D bump_domain(const BumpTestFunction& test, const ScalarField& field) {
  const double dist = test.center.norm();
  const double rho = test.radius;
  Domain2D d;
  if (dist <= rho) {
    d = Domain2D::truncated_plane(dist + rho);
    if (rho - dist > 0.0) d.add_radial_breaks({rho - dist});
    if (dist > 0.0) d.add_radial_breaks({dist});
  } else {
    const double half = std::asin(rho / dist);
    const double mid = test.center.angle();
    d = Domain2D::sector(mid - half, mid + half, dist + rho, dist - rho);
    d.add_angular_breaks({0.0, 0.5 * kPi, kPi, 1.5 * kPi, mid});
    d.add_radial_breaks({dist});
  }
  d.subdivide_angles(4);
  const SingularSet& s = field.singular_set();
  if (s.vertex.x1 == 0.0 && s.vertex.x2 == 0.0) d.add_angular_breaks(s.rays);
  return d;
}

QuadratureResult weak_residual(const QuadrantCoefficients& coeffs, const ScalarField& u, const DivergenceRhs& rhs,
                               const BumpTestFunction& test, Tolerance tol, const QuadratureOptions& options) {
  const ScalarField phi = test.field();
  const Integrand integrand = [&](Point x) {
    const Jet p = phi.taylor(x, 1).jet;
    const double phi0 = p.value();
    const double dphi1 = p.coeff(1, 0);
    const double dphi2 = p.coeff(0, 1);
    if (phi0 == 0.0 && dphi1 == 0.0 && dphi2 == 0.0) return 0.0;
    const Jet du = u.taylor(x, 1).jet;
    const double du1 = du.coeff(1, 0);
    const double du2 = du.coeff(0, 1);
    const CoeffMatrix& a = coeffs.at(x);
    const double flux = dphi1 * (a.a11 * du1 + a.a12 * du2) + dphi2 * (a.a21 * du1 + a.a22 * du2);
    const double g = rhs.g1.value(x) * dphi1 + rhs.g2.value(x) * dphi2;
    return flux - g + rhs.f.value(x) * phi0;
  };
  return integrate(integrand, bump_domain(test, u), tol, options);
}

}  // namespace cx
