#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cx/errors.hpp"

namespace cx::cli {

using nlohmann::ordered_json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// ------------------------------------------------------------------ config

void RunConfig::validate() const {
  if (command == "nondiv") {
    if (!(p > 2.0)) throw ParameterError("--p must be > 2");
    if (n < 2) throw ParameterError("--n must be >= 2");
    stage_from_string(stage);
    if (samples == 0) throw ParameterError("--samples must be positive");
  } else if (command == "div") {
    if (!(q > 2.0)) throw ParameterError("--q must be > 2");
    if (n < 2) throw ParameterError("--n must be >= 2");
    if (bumps == 0) throw ParameterError("--bumps must be positive");
  } else if (command == "ps") {
    if (!(theta0 > 0.0 && theta0 < 0.5 * kPi)) throw ParameterError("--theta0 must lie in (0, pi/2) radians");
    if (!(R > 0.0)) throw ParameterError("--R must be positive");
    if (ps_p != 0.0 && !(ps_p > 1.0)) throw ParameterError("--p must be > 1");
  } else if (command == "blowup") {
    if (!(p > 2.0)) throw ParameterError("--p must be > 2");
    if (n_list.size() < 2) throw ParameterError("--n needs at least two values");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      if (n_list[i] < 2) throw ParameterError("every n must be >= 2");
      if (i > 0 && n_list[i] <= n_list[i - 1]) throw ParameterError("n values must be strictly increasing");
    }
  } else if (command == "verify") {
    const std::vector<std::string> known{"residual", "interface", "derivative", "quadrature", "integrability", "all"};
    if (std::find(known.begin(), known.end(), suite) == known.end()) throw ParameterError("unknown suite " + suite);
    if (samples == 0 || points == 0) throw ParameterError("--samples and --points must be positive");
  } else {
    throw ParameterError("unknown command " + command);
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) throw ParameterError("--tol must be positive");
}

ordered_json RunConfig::to_json() const {
  ordered_json j;
  j["command"] = command;
  if (command == "nondiv") {
    j["p"] = p;
    j["n"] = n;
    j["stage"] = stage;
    j["samples"] = samples;
    j["seed"] = seed;
    j["certify"] = certify;
  } else if (command == "div") {
    j["q"] = q;
    j["n"] = n;
    j["bumps"] = bumps;
    j["seed"] = seed;
    j["certify"] = certify;
  } else if (command == "ps") {
    j["theta0"] = theta0;
    j["R"] = R;
    if (ps_p != 0.0) j["p"] = ps_p;
    j["bumps"] = bumps;
    j["seed"] = seed;
    j["certify"] = certify;
  } else if (command == "blowup") {
    j["p"] = p;
    j["n"] = n_list;
  } else if (command == "verify") {
    j["suite"] = suite;
    j["seed"] = seed;
    j["samples"] = samples;
    j["points"] = points;
  }
  j["tol"] = tol;
  j["json"] = json_path;
  j["csv"] = csv_path;
  return j;
}

// ------------------------------------------------------------------ serialization

ordered_json to_json(const VerificationReport& report) {
  ordered_json j;
  j["suite"] = report.suite;
  j["seed"] = report.seed;
  j["pass"] = report.pass;
  j["checks_total"] = report.checks.size();
  j["failures"] = report.failures();
  ordered_json stats = ordered_json::object();
  for (const auto& [k, v] : report.stats) stats[k] = v;
  j["stats"] = stats;
  j["notes"] = report.notes;
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    checks.push_back(ordered_json{{"name", c.name},
                                  {"location", c.location},
                                  {"measured", c.measured},
                                  {"threshold", c.threshold},
                                  {"pass", c.pass}});
  }
  j["checks"] = checks;
  return j;
}

ordered_json to_json(const BlowupReport& report) {
  ordered_json j;
  j["p"] = report.p;
  j["omega"] = report.omega;
  j["exponent"] = report.exponent;
  j["tol"] = report.tol;
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back(ordered_json{{"n", r.n},
                                {"ln_n", r.ln_n},
                                {"lp_v", r.lp_v},
                                {"lp_h", r.lp_h},
                                {"lp_D2_pow_p", r.d2_pow_p},
                                {"err_v", r.err_v},
                                {"err_h", r.err_h},
                                {"err_D2", r.err_d2},
                                {"ok", r.ok},
                                {"failure", r.failure}});
  }
  j["rows"] = rows;
  j["regression"] = ordered_json{{"slope", report.regression.slope},
                                 {"intercept", report.regression.intercept},
                                 {"r_squared", report.regression.r_squared}};
  j["increments"] = report.increments;
  j["increment_spread"] = report.increment_spread;
  return j;
}

ordered_json to_json(const QuadrantCoefficients& coeffs) {
  ordered_json j;
  for (Quadrant q : {Quadrant::I, Quadrant::II, Quadrant::III, Quadrant::IV}) {
    const CoeffMatrix& a = coeffs[q];
    j[to_string(q)] = ordered_json::array({ordered_json::array({a.a11, a.a12}), ordered_json::array({a.a21, a.a22})});
  }
  return j;
}

namespace {

ordered_json instance_json(const CounterexampleInstance& inst) {
  ordered_json j;
  j["kind"] = to_string(inst.kind);
  j["stages"] = inst.stages;
  const InstanceMetadata& m = inst.meta;
  if (inst.kind == InstanceKind::ps) {
    j["theta0"] = m.theta0;
    j["nu"] = m.nu;
    j["K"] = m.K;
    j["R"] = m.R;
  } else {
    j["p"] = m.p;
    j["n"] = m.n;
    j["omega"] = m.omega;
    j["exponent"] = m.exponent;
  }
  j["ellipticity"] = ordered_json{{"delta", m.ellipticity.delta},
                                  {"max_entry", m.ellipticity.max_entry},
                                  {"entries_bounded", m.ellipticity.entries_bounded}};
  j["coefficients"] = to_json(inst.coefficients);
  ordered_json qs = ordered_json::array();
  for (Quadrant q : inst.quadrants) qs.push_back(to_string(q));
  j["quadrants"] = qs;
  return j;
}

std::string point_str(Point x) { return "(" + format_double(x.x1) + ", " + format_double(x.x2) + ")"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string checks_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "suite,name,location,measured,threshold,pass\n";
  for (const auto& r : reports) {
    for (const auto& c : r.checks) {
      os << csv_field(r.suite) << ',' << csv_field(c.name) << ',' << csv_field(c.location) << ','
         << format_double(c.measured) << ',' << format_double(c.threshold) << ',' << (c.pass ? 1 : 0) << '\n';
    }
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ParameterError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw ParameterError("cannot write " + path);
}

// ------------------------------------------------------------------ suites

QuadratureOptions quad_options() { return QuadratureOptions{}; }

VerificationReport residual_battery(std::uint64_t seed, std::size_t samples) {
  VerificationReport all;
  all.suite = "residual";
  all.seed = seed;
  for (double p : {3.0, 4.0, 8.0}) {
    for (int n : {16, 256}) {
      const CounterexampleInstance inst = build_nondiv(p, n, Stage::full);
      ResidualOptions opt;
      opt.samples = samples;
      const VerificationReport r = residual_suite(inst, seed, opt);
      all.merge(r, "p=" + format_double(p) + ",n=" + std::to_string(n) + "/");
      // Mutation: 1% change of the off-diagonal entry must be detected.
      CounterexampleInstance mutated = inst;
      for (Quadrant q : {Quadrant::I, Quadrant::II, Quadrant::III, Quadrant::IV}) {
        mutated.coefficients[q].a12 *= 1.01;
      }
      ResidualOptions small = opt;
      small.samples = std::min<std::size_t>(samples, 1000);
      const VerificationReport m = residual_suite(mutated, seed, small);
      double worst = 0.0;
      for (const auto& c : m.checks) worst = std::max(worst, c.measured);
      all.add("p=" + format_double(p) + ",n=" + std::to_string(n) + "/mutation_a12_1pct_detected", "max residual",
              1e-3 / worst, 1.0);
    }
  }
  return all;
}

VerificationReport interface_battery() {
  VerificationReport all;
  all.suite = "interface";
  const std::vector<std::pair<std::string, double>> angles{{"pi/6", kPi / 6}, {"pi/4", kPi / 4}, {"pi/3", kPi / 3}};
  for (const auto& [name, t] : angles) {
    all.merge(interface_flux_suite(build_ps(t, 1.0)), "theta0=" + name + "/");
  }
  // Mutation: K off by 1% must break the flux condition.
  PsParams bad = PsParams::from_theta0(kPi / 6);
  bad.K *= 1.01;
  const VerificationReport m = interface_flux_suite(build_ps(bad, 1.0));
  std::size_t flux_failures = 0;
  for (const auto& c : m.checks) {
    if (c.name == "flux_jump" && !c.pass) ++flux_failures;
  }
  all.add("mutation_K_1pct_flux_failures", "theta0=pi/6", 12.0 - static_cast<double>(flux_failures), 0.0);
  return all;
}

VerificationReport derivative_battery(std::uint64_t seed, std::size_t points) {
  VerificationReport all;
  all.suite = "derivative";
  all.seed = seed;
  const CounterexampleInstance inst = build_nondiv(4.0, 16, Stage::full);
  const NondivTrace& t = *inst.trace;
  const SampleRegion sector{0.05, 3.0, 0.0, t.corner.omega};
  const SampleRegion quadrant{0.05, 3.0, 0.0, 0.5 * kPi};
  const SampleRegion plane{0.05, 3.0, 0.0, 2.0 * kPi};
  const std::vector<std::tuple<std::string, ScalarField, SampleRegion>> fields{
      {"corner_harmonic", corner_harmonic(t.corner), sector},
      {"v_n", t.v_n, sector},
      {"h_n", t.h_n, sector},
      {"u_n", t.u_n, quadrant},
      {"u_half", t.u_half, plane},
      {"u_full", t.u_full, plane},
      {"f_full", t.f_full, plane},
      {"div_solution", build_div(4.0, 16).solution, plane},
      {"ps_u", build_ps(kPi / 6, 1.0).solution, plane},
      {"linear", 2.0 * coordinate(1) - 3.0 * coordinate(2), plane},
  };
  std::uint64_t k = 0;
  for (const auto& [name, field, region] : fields) {
    all.merge(derivative_check(field, points, seed + k++, region), name + "/");
  }
  return all;
}

VerificationReport integrability_battery() {
  VerificationReport all;
  all.suite = "integrability";
  auto agree = [&all](const std::string& name, const std::string& where, Integrability got, Integrability want) {
    all.add(name, where + " expected=" + to_string(want) + " got=" + to_string(got), got == want ? 0.0 : 1.0, 0.0);
  };

  // Hessian of the corner harmonic sits exactly on the boundary.
  for (std::int64_t p : {3, 4, 8}) {
    const Rational alpha = corner_hessian_exponent(Rational(p));
    const Rational e = Rational(p) * alpha + Rational(2);
    all.add("corner_hessian_boundary_exponent", "p=" + std::to_string(p), std::abs(e.value()), 0.0);
    agree("corner_hessian_classification", "p=" + std::to_string(p),
          integrability_threshold(alpha, Rational(p)), Integrability::infinite);
  }
  agree("alpha_zero", "p=7/2", integrability_threshold(Rational(0), Rational(7, 2)), Integrability::finite);

  // Du of the piecewise-polar profile, alpha = nu - 1, nu = 4 theta0 / pi.
  const Rational nu(2, 3);
  const Rational threshold = ps_gradient_threshold(nu);
  const Rational alpha = nu - Rational(1);
  all.add("ps_threshold_theta0=pi/6", "2/(1-nu)=" + threshold.str(), std::abs(threshold.value() - 6.0), 0.0);
  agree("ps_exact_below", "p=" + (threshold - Rational(1, 1000)).str(),
        integrability_threshold(alpha, threshold - Rational(1, 1000)), Integrability::finite);
  agree("ps_exact_at", "p=" + threshold.str(), integrability_threshold(alpha, threshold), Integrability::infinite);
  agree("ps_exact_above", "p=" + (threshold + Rational(1, 1000)).str(),
        integrability_threshold(alpha, threshold + Rational(1, 1000)), Integrability::infinite);
  for (const Rational& dp : {Rational(-1, 4), Rational(1, 4)}) {
    const Rational p = threshold + dp;
    agree("ps_numeric_agrees", "p=" + p.str(), integrability_numeric(alpha.value(), p.value(), quad_options()).classification,
          integrability_threshold(alpha, p));
  }
  // No threshold when nu >= 1.
  for (const auto& [name, nu_k] : {std::pair{std::string("pi/4"), Rational(1)}, {std::string("pi/3"), Rational(4, 3)}}) {
    for (std::int64_t p : {2, 6, 50}) {
      agree("ps_no_threshold_theta0=" + name, "p=" + std::to_string(p),
            integrability_threshold(nu_k - Rational(1), Rational(p)), Integrability::finite);
    }
  }

  // Sweep straddling the boundary: p alpha + 2 = +-(1/20 + k/25).
  for (int k = 0; k < 25; ++k) {
    const Rational p(3 + k % 7, 1 + k % 2);
    if (!(Rational(1) < p)) continue;
    for (int sign : {-1, 1}) {
      const Rational gap = Rational(sign) * (Rational(1, 20) + Rational(k, 25));
      const Rational a = (gap - Rational(2)) / p;
      agree("sweep_numeric_vs_exact", "alpha=" + a.str() + " p=" + p.str(),
            integrability_numeric(a.value(), p.value(), quad_options()).classification, integrability_threshold(a, p));
    }
  }
  return all;
}

std::vector<VerificationReport> run_suites(const RunConfig& cfg) {
  std::vector<VerificationReport> out;
  const bool all = cfg.suite == "all";
  if (all || cfg.suite == "residual") out.push_back(residual_battery(cfg.seed, cfg.samples));
  if (all || cfg.suite == "interface") out.push_back(interface_battery());
  if (all || cfg.suite == "derivative") out.push_back(derivative_battery(cfg.seed, cfg.points));
  if (all || cfg.suite == "quadrature") out.push_back(quadrature_suite(cfg.tol < 1e-8 ? cfg.tol : 1e-10, quad_options()));
  if (all || cfg.suite == "integrability") out.push_back(integrability_battery());
  return out;
}

// ------------------------------------------------------------------ commands

struct Outcome {
  ordered_json body;
  std::string csv;
  bool pass = true;
};

Outcome cmd_nondiv(const RunConfig& cfg) {
  Outcome o;
  const CounterexampleInstance inst = build_nondiv(cfg.p, cfg.n, stage_from_string(cfg.stage));
  o.body["instance"] = instance_json(inst);
  std::vector<VerificationReport> reports;
  if (cfg.certify) {
    ResidualOptions opt;
    opt.samples = cfg.samples;
    reports.push_back(residual_suite(inst, cfg.seed, opt));
    o.pass = reports.back().pass;
    o.body["residual"] = to_json(reports.back());
  }
  o.csv = checks_csv(reports);
  return o;
}

VerificationReport weak_residuals(const CounterexampleInstance& inst, const RunConfig& cfg, bool relative_to_estimate) {
  VerificationReport r;
  r.suite = "weak_residual";
  r.seed = cfg.seed;
  for (const BumpTestFunction& b : seeded_bumps(cfg.bumps, cfg.seed)) {
    const std::string where = "center=" + point_str(b.center) + " radius=" + format_double(b.radius);
    try {
      const QuadratureResult q = weak_residual(inst.coefficients, inst.solution, inst.rhs, b, Tolerance(cfg.tol));
      const double bound = relative_to_estimate ? 10.0 * q.error_estimate : std::max(cfg.tol, 10.0 * q.error_estimate);
      r.add("weak_residual", where, std::abs(q.value), bound);
      r.stat("error_estimate[" + std::to_string(r.checks.size() - 1) + "]", q.error_estimate);
    } catch (const QuadratureError& e) {
      r.add(CheckRecord{"weak_residual", where + " (" + e.what() + ")", std::abs(e.best().value), 0.0, false});
    }
  }
  return r;
}

Outcome cmd_div(const RunConfig& cfg) {
  Outcome o;
  const CounterexampleInstance inst = build_div(cfg.q, cfg.n);
  o.body["instance"] = instance_json(inst);
  VerificationReport rewiring;
  rewiring.suite = "rewiring";
  const CoeffMatrix base = pushforward_coefficients(inst.trace->shear);
  for (Quadrant k : {Quadrant::I, Quadrant::II, Quadrant::III, Quadrant::IV}) {
    const CoeffMatrix& a = inst.coefficients[k];
    const double s = quadrant_sign(k);
    const std::string where = std::string("quadrant ") + to_string(k);
    rewiring.add("a12_zero", where, std::abs(a.a12), 0.0);
    rewiring.add("a21_twice_off_diagonal", where, std::abs(a.a21 - 2.0 * s * base.a12), 0.0);
    rewiring.add("a11_constant", where, std::abs(a.a11 - base.a11), 0.0);
    rewiring.add("a22_constant", where, std::abs(a.a22 - base.a22), 0.0);
  }
  std::vector<VerificationReport> reports{rewiring};
  if (cfg.certify) reports.push_back(weak_residuals(inst, cfg, true));
  ordered_json certs = ordered_json::array();
  for (const auto& r : reports) {
    certs.push_back(to_json(r));
    o.pass = o.pass && r.pass;
  }
  o.body["certificates"] = certs;
  o.csv = checks_csv(reports);
  return o;
}

Outcome cmd_ps(const RunConfig& cfg) {
  Outcome o;
  const CounterexampleInstance inst = build_ps(cfg.theta0, cfg.R);
  o.body["instance"] = instance_json(inst);
  std::vector<VerificationReport> reports;
  if (cfg.certify) {
    reports.push_back(interface_flux_suite(inst));
    reports.push_back(weak_residuals(inst, cfg, false));
  }
  if (cfg.ps_p != 0.0) {
    VerificationReport integ;
    integ.suite = "integrability";
    const double nu = inst.meta.nu;
    const double alpha = nu - 1.0;
    ordered_json j;
    j["alpha"] = alpha;
    j["p"] = cfg.ps_p;
    const auto nu_q = Rational::approximate(nu);
    const auto p_q = Rational::approximate(cfg.ps_p);
    Integrability exact;
    if (nu_q && p_q) {
      exact = integrability_threshold(*nu_q - Rational(1), *p_q);
      j["mode"] = "exact";
      j["nu_rational"] = nu_q->str();
      j["p_rational"] = p_q->str();
      if (*nu_q < Rational(1)) j["threshold"] = ps_gradient_threshold(*nu_q).str();
    } else {
      exact = cfg.ps_p * alpha + 2.0 > 0.0 ? Integrability::finite : Integrability::infinite;
      j["mode"] = "floating";
    }
    j["Du_in_Lp"] = to_string(exact);
    const NumericIntegrability num = integrability_numeric(alpha, cfg.ps_p, quad_options());
    j["numeric"] = ordered_json{{"classification", to_string(num.classification)},
                                {"eps", num.eps},
                                {"partial", num.partial},
                                {"increments", num.increments}};
    o.body["integrability"] = j;
    // On the exact boundary the numeric mode has no verdict.
    if (cfg.ps_p * alpha + 2.0 != 0.0 || !(nu_q && p_q)) {
      integ.add("numeric_agrees_with_exact", "p=" + format_double(cfg.ps_p), num.classification == exact ? 0.0 : 1.0,
                0.0);
    }
    reports.push_back(integ);
  }
  ordered_json certs = ordered_json::array();
  for (const auto& r : reports) {
    certs.push_back(to_json(r));
    o.pass = o.pass && r.pass;
  }
  o.body["certificates"] = certs;
  o.csv = checks_csv(reports);
  return o;
}

Outcome cmd_blowup(const RunConfig& cfg) {
  Outcome o;
  const BlowupReport rep = blowup_study(cfg.p, cfg.n_list, cfg.tol, quad_options());
  o.body["blowup"] = to_json(rep);
  VerificationReport checks;
  checks.suite = "blowup";
  for (const auto& r : rep.rows) {
    checks.add(CheckRecord{"row_converged", "n=" + std::to_string(r.n), r.ok ? 0.0 : 1.0, 0.0, r.ok});
  }
  checks.add("r_squared_deficit", "min_r_squared=" + format_double(cfg.min_r_squared),
             1.0 - rep.regression.r_squared, 1.0 - cfg.min_r_squared);
  checks.add("increment_spread", "max=" + format_double(cfg.max_increment_spread), rep.increment_spread,
             cfg.max_increment_spread);
  checks.add("slope_positive", "slope=" + format_double(rep.regression.slope), -rep.regression.slope, 0.0);
  o.body["checks"] = to_json(checks);
  o.pass = checks.pass;
  std::ostringstream csv;
  csv << "n,ln_n,lp_v,lp_h,lp_D2_pow_p,quad_err\n";
  for (const auto& r : rep.rows) {
    csv << r.n << ',' << format_double(r.ln_n) << ',' << format_double(r.lp_v) << ',' << format_double(r.lp_h) << ','
        << format_double(r.d2_pow_p) << ',' << format_double(r.err_d2) << '\n';
  }
  o.csv = csv.str();
  return o;
}

Outcome cmd_verify(const RunConfig& cfg) {
  Outcome o;
  const std::vector<VerificationReport> reports = run_suites(cfg);
  ordered_json suites = ordered_json::array();
  for (const auto& r : reports) {
    suites.push_back(to_json(r));
    o.pass = o.pass && r.pass;
  }
  o.body["suites"] = suites;
  o.csv = checks_csv(reports);
  return o;
}

ordered_json tolerances(const RunConfig& cfg) {
  return ordered_json{{"tol", cfg.tol},
                      {"strong_residual", 1e-8},
                      {"axis_tube", 1e-9},
                      {"interface_relative", 1e-12},
                      {"fd_step", 1e-5},
                      {"fd_gradient_relative", 1e-6},
                      {"fd_hessian_relative", 1e-4},
                      {"fd_clearance", 1e-2},
                      {"weak_residual_factor", 10.0},
                      {"min_r_squared", cfg.min_r_squared},
                      {"max_increment_spread", cfg.max_increment_spread}};
}

}  // namespace

// ------------------------------------------------------------------ run

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Four-quadrant elliptic counterexamples: build, measure, certify", "cx"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto common = [&cfg](CLI::App* sub) {
    sub->add_option("--json", cfg.json_path, "write the JSON report here instead of stdout");
    sub->add_option("--csv", cfg.csv_path, "write the CSV table here");
    return sub->add_option("--tol", cfg.tol, "quadrature tolerance");
  };

  CLI::App* nondiv = app.add_subcommand("nondiv", "non-divergence counterexample for exponent p");
  nondiv->add_option("--p", cfg.p, "exponent p > 2")->required();
  nondiv->add_option("--n", cfg.n, "cutoff index n >= 2")->required();
  nondiv->add_option("--stage", cfg.stage, "quadrant, half or full")->check(CLI::IsMember({"quadrant", "half", "full"}));
  nondiv->add_option("--samples", cfg.samples, "residual samples");
  nondiv->add_option("--seed", cfg.seed, "sampling seed");
  nondiv->add_flag("!--no-certify", cfg.certify, "skip the residual certificate");
  CLI::Option* nondiv_tol = common(nondiv);

  CLI::App* div = app.add_subcommand("div", "divergence-form counterexample for exponent q");
  div->add_option("--q", cfg.q, "exponent q > 2")->required();
  div->add_option("--n", cfg.n, "cutoff index n >= 2")->required();
  div->add_option("--bumps", cfg.bumps, "number of seeded test functions");
  div->add_option("--seed", cfg.seed, "test-function seed");
  div->add_flag("!--no-certify", cfg.certify, "skip the weak-residual certificate");
  CLI::Option* div_tol = common(div);

  CLI::App* ps = app.add_subcommand("ps", "piecewise-polar profile with angle theta0 (radians)");
  ps->add_option("--theta0", cfg.theta0, "angle in (0, pi/2), radians")->required();
  ps->add_option("--p", cfg.ps_p, "classify Du in L_p for this p");
  ps->add_option("--R", cfg.R, "ball radius");
  ps->add_option("--bumps", cfg.bumps, "number of seeded test functions");
  ps->add_option("--seed", cfg.seed, "test-function seed");
  ps->add_flag("!--no-certify", cfg.certify, "skip the interface and weak-residual certificates");
  common(ps);

  CLI::App* blowup = app.add_subcommand("blowup", "second-derivative norms against ln n");
  blowup->add_option("--p", cfg.p, "exponent p > 2")->required();
  blowup->add_option("--n", cfg.n_list, "comma-separated n values")->delimiter(',');
  blowup->add_option("--min-r2", cfg.min_r_squared, "required R^2 of the fit");
  blowup->add_option("--max-spread", cfg.max_increment_spread, "allowed increment spread");
  common(blowup);

  CLI::App* verify = app.add_subcommand("verify", "certification suites");
  verify->add_option("--suite", cfg.suite, "residual, interface, derivative, quadrature, integrability or all");
  verify->add_option("--seed", cfg.seed, "sampling seed");
  verify->add_option("--samples", cfg.samples, "residual samples per instance");
  verify->add_option("--points", cfg.points, "finite-difference points per field");
  common(verify);

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  if (cfg.command == "div" && div_tol->count() == 0) cfg.tol = 1e-6;
  (void)nondiv_tol;

  Outcome outcome;
  try {
    cfg.validate();
    if (cfg.command == "nondiv") outcome = cmd_nondiv(cfg);
    if (cfg.command == "div") outcome = cmd_div(cfg);
    if (cfg.command == "ps") outcome = cmd_ps(cfg);
    if (cfg.command == "blowup") outcome = cmd_blowup(cfg);
    if (cfg.command == "verify") outcome = cmd_verify(cfg);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n\n" << chosen->help();
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    outcome.pass = false;
    outcome.body["error"] = e.what();
  }

  ordered_json doc;
  doc["tool"] = "cx";
  doc["version"] = kVersion;
  doc["config"] = cfg.to_json();
  doc["tolerances"] = tolerances(cfg);
  for (auto it = outcome.body.begin(); it != outcome.body.end(); ++it) doc[it.key()] = it.value();
  doc["pass"] = outcome.pass;
  const std::string text = doc.dump(2) + "\n";
  try {
    if (cfg.json_path.empty()) {
      out << text;
    } else {
      write_file(cfg.json_path, text);
    }
    if (!cfg.csv_path.empty()) write_file(cfg.csv_path, outcome.csv);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return outcome.pass ? kPass : kFail;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace cx::cli
