#pragma once

// Piecewise-constant coefficients on the four open quadrants and the
// operators they define.

#include <array>
#include <cstdint>
#include <vector>

#include "cx/fields.hpp"
#include "cx/geometry.hpp"
#include "cx/quadrature.hpp"

namespace cx {

/// a^{ij}; not assumed symmetric. Ellipticity is measured on the symmetric part.
using CoeffMatrix = Mat2;

class QuadrantCoefficients {
 public:
  QuadrantCoefficients() = default;
  explicit QuadrantCoefficients(std::array<CoeffMatrix, 4> per_quadrant) : m_(per_quadrant) {}
  /// The same matrix on every quadrant.
  static QuadrantCoefficients uniform(const CoeffMatrix& a);

  const CoeffMatrix& operator[](Quadrant q) const { return m_[static_cast<std::size_t>(index_of(q))]; }
  CoeffMatrix& operator[](Quadrant q) { return m_[static_cast<std::size_t>(index_of(q))]; }
  /// Matrix in force at x, with the quadrant_of() convention on the axes.
  const CoeffMatrix& at(Point x) const { return (*this)[quadrant_of(x)]; }

  friend bool operator==(const QuadrantCoefficients&, const QuadrantCoefficients&) = default;

 private:
  std::array<CoeffMatrix, 4> m_{};
};

/// [1, -cot omega; 0, 1]: maps the sector of opening omega onto the first
/// quadrant with unit determinant. Requires omega in (0, pi).
Mat2 shear_matrix(double omega);

/// A A^T, so that a^{ij} D_ij (v o A^{-1}) = (Delta v) o A^{-1}.
CoeffMatrix pushforward_coefficients(const Mat2& a);

/// Odd reflections across both axes: off-diagonals pick up
/// sign(x1) sign(x2), diagonals stay. Throws NonEllipticError.
QuadrantCoefficients quadrant_coefficients(const CoeffMatrix& a);

struct NondivValue {
  double value = 0.0;
  bool on_interface = false;
};

/// sum_ij a^{ij}(x) D_ij u(x)
NondivValue apply_nondiv(const QuadrantCoefficients& coeffs, const ScalarField& field, Point x);

struct Ellipticity {
  /// Smallest eigenvalue of the symmetric parts over all quadrants.
  double delta = 0.0;
  double max_entry = 0.0;
  /// max_entry <= 1 / delta
  bool entries_bounded = false;
};

/// Throws NonEllipticError when delta <= 0.
Ellipticity ellipticity_constant(const QuadrantCoefficients& coeffs);

/// Right-hand side D_i g_i + f of a divergence-form equation.
struct DivergenceRhs {
  ScalarField g1;
  ScalarField g2;
  ScalarField f;
};

/// exp(1 - 1/(1 - |x - c|^2 / rho^2)), unit sup, supported in the disk.
struct BumpTestFunction {
  Point center;
  double radius = 1.0;

  ScalarField field() const { return bump(center, radius); }
};

/// Bumps with centers uniform in [-center_box, center_box]^2 and radii
/// uniform in [r_min, r_max], drawn from a seeded mt19937_64.
std::vector<BumpTestFunction> seeded_bumps(std::size_t count, std::uint64_t seed, double center_box = 2.0,
                                           double r_min = 0.5, double r_max = 1.5);

/// R = integral of (a^{ij} D_j u D_i phi - g_i D_i phi + f phi). R = 0 for
/// every phi exactly when D_i(a^{ij} D_j u) = D_i g_i + f weakly.
QuadratureResult weak_residual(const QuadrantCoefficients& coeffs, const ScalarField& u, const DivergenceRhs& rhs,
                               const BumpTestFunction& test, Tolerance tol, const QuadratureOptions& options = {});

/// Polar bounding region of the bump's support, split along the axes and
/// the rays of `field`.
Domain2D bump_domain(const BumpTestFunction& test, const ScalarField& field);

}  // namespace cx
