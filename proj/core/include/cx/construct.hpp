#pragma once

// End-to-end pipelines for the counterexample families and the blow-up study.
//
// Non-divergence family (p > 2, n >= 2):
//   corner harmonic v on the sector of opening omega(p)
//   -> v_n = v zeta_n, h_n = Delta v_n                      (sector)
//   -> u_n = v_n o A^{-1}, f_n = h_n o A^{-1}, a = A A^T     (first quadrant)
//   -> odd extension in x2, off-diagonals flip for x2 < 0    (half plane x1 > 0)
//   -> odd extension in x1, off-diagonals flip for x1 < 0    (whole plane)
//
// Divergence family (q > 2): v_n = D2 of the whole-plane solution, g = (0, f),
// coefficients rewired to a12 = 0, a21 = a12 + a21.

#include <optional>
#include <string>
#include <vector>

#include "cx/fields.hpp"
#include "cx/operators.hpp"
#include "cx/quadrature.hpp"

namespace cx {

enum class InstanceKind { nondiv_quadrant, nondiv_half, nondiv_full, div_full, ps };
enum class Stage { quadrant, half, full };

const char* to_string(InstanceKind k);
const char* to_string(Stage s);
/// Throws ParameterError for unknown names.
Stage stage_from_string(const std::string& s);

/// Intermediate objects of the non-divergence pipeline.
struct NondivTrace {
  CornerParams corner;
  int n = 0;
  Mat2 shear;
  CoeffMatrix pushforward;
  ScalarField v_n;  // sector
  ScalarField h_n;
  ScalarField u_n;  // first quadrant
  ScalarField f_n;
  ScalarField u_half;  // half plane x1 > 0
  ScalarField f_half;
  ScalarField u_full;  // whole plane
  ScalarField f_full;
};

struct InstanceMetadata {
  double p = 0.0;  // p for nondiv, q for div; 0 for ps
  int n = 0;
  double omega = 0.0;
  double exponent = 0.0;
  double theta0 = 0.0;
  double nu = 0.0;
  double K = 0.0;
  double R = 0.0;
  Ellipticity ellipticity;
};

struct CounterexampleInstance {
  InstanceKind kind = InstanceKind::nondiv_full;
  QuadrantCoefficients coefficients;
  ScalarField solution;
  /// Non-divergence: L u = rhs.f. Divergence: D_i(a^{ij} D_j u) = D_i g_i + f.
  DivergenceRhs rhs;
  /// Open quadrants where the equation is posed.
  std::vector<Quadrant> quadrants;
  /// Pipeline stages, in order.
  std::vector<std::string> stages;
  InstanceMetadata meta;
  std::optional<NondivTrace> trace;
  std::optional<PsProfile> ps;
};

CounterexampleInstance build_nondiv(double p, int n, Stage stage);
CounterexampleInstance build_div(double q, int n);
CounterexampleInstance build_ps(double theta0, double radius);
/// Same as build_ps with explicit (possibly inconsistent) parameters.
CounterexampleInstance build_ps(const PsParams& params, double radius);

/// Quadrants where x1 > 0 (half) or all four (full).
std::vector<Quadrant> stage_quadrants(Stage stage);

struct BlowupRow {
  int n = 0;
  double ln_n = 0.0;
  double lp_v = 0.0;
  double lp_h = 0.0;
  /// ||D^2 v_n||_p^p
  double d2_pow_p = 0.0;
  double err_v = 0.0;
  double err_h = 0.0;
  double err_d2 = 0.0;
  bool ok = true;
  std::string failure;
};

struct Regression {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

struct BlowupReport {
  double p = 0.0;
  double omega = 0.0;
  double exponent = 0.0;
  double tol = 0.0;
  std::vector<BlowupRow> rows;
  Regression regression;
  /// (I(n_{k+1}) - I(n_k)) / (ln n_{k+1} - ln n_k) for successful neighbours.
  std::vector<double> increments;
  /// max |increment / mean - 1|
  double increment_spread = 0.0;
};

/// Least squares fit y = slope x + intercept. Requires >= 2 points.
Regression fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Norms of v_n, h_n and D^2 v_n over the sector for each n, and the fit of
/// ||D^2 v_n||_p^p against ln n. tol is relative to each integral.
BlowupReport blowup_study(double p, const std::vector<int>& n_list, double tol,
                          const QuadratureOptions& options = {});

/// Sector domain carrying the pipeline's radial breakpoints.
Domain2D corner_domain(const CornerParams& corner, int n);

}  // namespace cx
