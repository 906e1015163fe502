#include "cx/construct.hpp"

#include <algorithm>
#include <cmath>

#include "cx/errors.hpp"

namespace cx {

const char* to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::nondiv_quadrant: return "nondiv-quadrant";
    case InstanceKind::nondiv_half: return "nondiv-half-plane";
    case InstanceKind::nondiv_full: return "nondiv-full-plane";
    case InstanceKind::div_full: return "div-full-plane";
    case InstanceKind::ps: return "ps";
  }
  return "?";
}

const char* to_string(Stage s) {
  switch (s) {
    case Stage::quadrant: return "quadrant";
    case Stage::half: return "half";
    case Stage::full: return "full";
  }
  return "?";
}

Stage stage_from_string(const std::string& s) {
  if (s == "quadrant") return Stage::quadrant;
  if (s == "half") return Stage::half;
  if (s == "full") return Stage::full;
  throw ParameterError("unknown stage '" + s + "' (expected quadrant, half or full)");
}

std::vector<Quadrant> stage_quadrants(Stage stage) {
  switch (stage) {
    case Stage::quadrant: return {Quadrant::I};
    case Stage::half: return {Quadrant::I, Quadrant::IV};
    case Stage::full: break;
  }
  return {Quadrant::I, Quadrant::II, Quadrant::III, Quadrant::IV};
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

CounterexampleInstance build_nondiv(double p, int n, Stage stage) {
  const CornerParams corner = omega_for_p(p);
  const TruncatedCorner tc = truncated_corner(corner, n);
  const Mat2 shear = shear_matrix(corner.omega);
  const CoeffMatrix a = pushforward_coefficients(shear);

  NondivTrace t;
  t.corner = corner;
  t.n = n;
  t.shear = shear;
  t.pushforward = a;
  t.v_n = tc.v_n;
  t.h_n = tc.h_n;
  t.u_n = affine_pullback(tc.v_n, shear);
  t.f_n = affine_pullback(tc.h_n, shear);
  t.u_half = reflect(t.u_n, Axis::x2, Parity::odd);
  t.f_half = reflect(t.f_n, Axis::x2, Parity::odd);
  t.u_full = reflect(t.u_half, Axis::x1, Parity::odd);
  t.f_full = reflect(t.f_half, Axis::x1, Parity::odd);

  CounterexampleInstance inst;
  inst.coefficients = quadrant_coefficients(a);
  inst.quadrants = stage_quadrants(stage);
  inst.stages = {"corner_harmonic(omega=" + fmt(corner.omega) + ", exponent=" + fmt(corner.exponent) + ")",
                 "cutoff(n=" + std::to_string(n) + ")",
                 "shear(cot_omega=" + fmt(-shear.a12) + ")"};
  switch (stage) {
    case Stage::quadrant:
      inst.kind = InstanceKind::nondiv_quadrant;
      inst.solution = t.u_n;
      inst.rhs.f = t.f_n;
      break;
    case Stage::half:
      inst.kind = InstanceKind::nondiv_half;
      inst.solution = t.u_half;
      inst.rhs.f = t.f_half;
      inst.stages.push_back("reflect_odd_x2");
      break;
    case Stage::full:
      inst.kind = InstanceKind::nondiv_full;
      inst.solution = t.u_full;
      inst.rhs.f = t.f_full;
      inst.stages.push_back("reflect_odd_x2");
      inst.stages.push_back("reflect_odd_x1");
      break;
  }
  inst.meta.p = p;
  inst.meta.n = n;
  inst.meta.omega = corner.omega;
  inst.meta.exponent = corner.exponent;
  inst.meta.ellipticity = ellipticity_constant(inst.coefficients);
  inst.trace = std::move(t);
  return inst;
}

CounterexampleInstance build_div(double q, int n) {
  CounterexampleInstance inst = build_nondiv(q, n, Stage::full);
  const QuadrantCoefficients full = inst.coefficients;
  QuadrantCoefficients rewired;
  for (Quadrant k : {Quadrant::I, Quadrant::II, Quadrant::III, Quadrant::IV}) {
    const CoeffMatrix& a = full[k];
    rewired[k] = CoeffMatrix{a.a11, 0.0, a.a12 + a.a21, a.a22};
  }
  const ScalarField f_full = inst.rhs.f;
  inst.kind = InstanceKind::div_full;
  inst.coefficients = rewired;
  inst.solution = partial(inst.solution, 2);
  inst.rhs = DivergenceRhs{constant(0.0), f_full, constant(0.0)};
  inst.stages.push_back("differentiate_x2");
  inst.meta.ellipticity = ellipticity_constant(rewired);
  return inst;
}

CounterexampleInstance build_ps(const PsParams& params, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ParameterError("ball radius R must be positive");
  PsProfile profile(params);
  CounterexampleInstance inst;
  inst.kind = InstanceKind::ps;
  std::array<CoeffMatrix, 4> m{};
  for (int k = 0; k < 4; ++k) {
    const double a = profile.coefficient(k);
    m[static_cast<std::size_t>(k)] = CoeffMatrix{a, 0.0, 0.0, a};
  }
  inst.coefficients = QuadrantCoefficients(m);
  inst.solution = profile.u();
  inst.rhs = DivergenceRhs{constant(0.0), constant(0.0), constant(0.0)};
  inst.quadrants = stage_quadrants(Stage::full);
  inst.stages = {"ps_profile(theta0=" + fmt(params.theta0) + ", nu=" + fmt(params.nu) + ", K=" + fmt(params.K) + ")"};
  inst.meta.theta0 = params.theta0;
  inst.meta.nu = params.nu;
  inst.meta.K = params.K;
  inst.meta.R = radius;
  inst.meta.ellipticity = ellipticity_constant(inst.coefficients);
  inst.ps = std::move(profile);
  return inst;
}

CounterexampleInstance build_ps(double theta0, double radius) {
  return build_ps(PsParams::from_theta0(theta0), radius);
}

// ------------------------------------------------------------------ blow-up study

Regression fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ParameterError("regression needs >= 2 points");
  const double m = static_cast<double>(x.size());
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / m;
  const double my = sy / m;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw ParameterError("regression abscissae are all equal");
  Regression r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (r.slope * x[i] + r.intercept);
    ss_res += e * e;
  }
  if (x.size() == 2 || syy == 0.0) {
    r.r_squared = 1.0;
  } else {
    r.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return r;
}

Domain2D corner_domain(const CornerParams& corner, int n) {
  const CutoffParams c(n);
  Domain2D d = Domain2D::sector(0.0, corner.omega, CutoffParams::outer_zero());
  d.add_radial_breaks({c.inner_zero(), c.inner_one(), CutoffParams::outer_one()});
  return d;
}

namespace {

// Sum of independent integrals over the radial shells of the corner domain.
// The shells beyond 2/n do not depend on n, so they are reproduced bit for
// bit across rows and drop out of the increments.
LpNorm shell_lp_norm(const ScalarField& field, JetKind kind, const CornerParams& corner, int n, double p,
                     Tolerance tol, const QuadratureOptions& options) {
  const std::vector<double> edges = corner_domain(corner, n).radial_edges();
  QuadratureResult total;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const Domain2D shell = Domain2D::sector(0.0, corner.omega, edges[k + 1], edges[k]);
    const LpNorm piece = lp_norm(field, kind, shell, p, tol, options);
    total.value += piece.pth_power.value;
    total.error_estimate += piece.pth_power.error_estimate;
    total.panels += piece.pth_power.panels;
  }
  return LpNorm{std::pow(std::max(total.value, 0.0), 1.0 / p), total};
}

}  // namespace

BlowupReport blowup_study(double p, const std::vector<int>& n_list, double tol, const QuadratureOptions& options) {
  if (n_list.size() < 2) throw ParameterError("blow-up study needs at least two values of n");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 2) throw ParameterError("every n must be >= 2");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw ParameterError("n values must be strictly increasing");
  }
  if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
  const CornerParams corner = omega_for_p(p);

  BlowupReport report;
  report.p = p;
  report.omega = corner.omega;
  report.exponent = corner.exponent;
  report.tol = tol;
  const Tolerance t(tol, tol);

  for (int n : n_list) {
    BlowupRow row;
    row.n = n;
    row.ln_n = std::log(static_cast<double>(n));
    try {
      const TruncatedCorner tc = truncated_corner(corner, n);
      const LpNorm v = shell_lp_norm(tc.v_n, JetKind::value, corner, n, p, t, options);
      const LpNorm h = shell_lp_norm(tc.h_n, JetKind::value, corner, n, p, t, options);
      const LpNorm d2 = shell_lp_norm(tc.v_n, JetKind::hessian, corner, n, p, t, options);
      row.lp_v = v.norm;
      row.lp_h = h.norm;
      row.d2_pow_p = d2.pth_power.value;
      row.err_v = v.pth_power.error_estimate;
      row.err_h = h.pth_power.error_estimate;
      row.err_d2 = d2.pth_power.error_estimate;
    } catch (const QuadratureError& e) {
      row.ok = false;
      row.failure = e.what();
      row.d2_pow_p = e.best().value;
      row.err_d2 = e.best().error_estimate;
    }
    report.rows.push_back(row);
  }

  std::vector<double> x;
  std::vector<double> y;
  for (const auto& row : report.rows) {
    if (!row.ok) continue;
    x.push_back(row.ln_n);
    y.push_back(row.d2_pow_p);
  }
  if (x.size() < 2) throw QuadratureError("fewer than two blow-up rows converged", QuadratureResult{});
  report.regression = fit_line(x, y);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    report.increments.push_back((y[i + 1] - y[i]) / (x[i + 1] - x[i]));
  }
  double mean = 0.0;
  for (double v : report.increments) mean += v;
  mean /= static_cast<double>(report.increments.size());
  for (double v : report.increments) {
    report.increment_spread = std::max(report.increment_spread, std::abs(v / mean - 1.0));
  }
  return report;
}

}  // namespace cx
