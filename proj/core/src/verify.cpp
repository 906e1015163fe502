#include "cx/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>

#include "cx/errors.hpp"
#include "cx/parallel.hpp"

namespace cx {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string at_point(Point x) { return "(" + fmt(x.x1) + ", " + fmt(x.x2) + ")"; }

// 53-bit uniform in [0, 1) so that samples do not depend on the standard
// library's distribution implementation.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : gen_(seed) {}
  double operator()() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

double quantile(std::vector<double> sorted, double q) {
  if (sorted.empty()) return 0.0;
  const std::size_t i = static_cast<std::size_t>(std::floor(q * static_cast<double>(sorted.size() - 1)));
  return sorted[i];
}

}  // namespace

// ------------------------------------------------------------------ report

void VerificationReport::add(std::string name, std::string location, double measured, double threshold) {
  add(CheckRecord{std::move(name), std::move(location), measured, threshold, measured <= threshold});
}

void VerificationReport::add(CheckRecord record) {
  if (!(record.measured <= record.threshold)) record.pass = false;
  pass = pass && record.pass;
  checks.push_back(std::move(record));
}

void VerificationReport::stat(std::string name, double value) { stats.emplace_back(std::move(name), value); }

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
  for (CheckRecord c : other.checks) {
    c.name = prefix + c.name;
    add(std::move(c));
  }
  for (const auto& [k, v] : other.stats) stat(prefix + k, v);
  for (const auto& n : other.notes) notes.push_back(prefix + n);
}

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const CheckRecord& c) { return !c.pass; }));
}

// ------------------------------------------------------------------ residual

VerificationReport residual_suite(const CounterexampleInstance& instance, std::uint64_t seed,
                                  const ResidualOptions& options) {
  if (instance.kind == InstanceKind::div_full || instance.kind == InstanceKind::ps) {
    throw ParameterError("residual suite needs a non-divergence instance");
  }
  if (instance.meta.n < 1) throw ParameterError("instance carries no cutoff index n");
  if (instance.quadrants.empty()) throw ParameterError("instance has no quadrants");

  VerificationReport report;
  report.suite = "residual";
  report.seed = seed;

  const double r_lo = 0.5 / instance.meta.n;
  const double r_hi = 4.0;
  const double log_lo = std::log(r_lo);
  const double log_span = std::log(r_hi) - log_lo;
  const SingularSet& singular = instance.solution.singular_set();
  const std::size_t nq = instance.quadrants.size();

  Uniform unit(seed);
  std::vector<Point> points;
  std::vector<std::size_t> owner;
  points.reserve(options.samples);
  std::size_t redraws = 0;
  for (std::size_t i = 0; i < options.samples; ++i) {
    const std::size_t q = i % nq;
    const double theta0 = 0.5 * kPi * index_of(instance.quadrants[q]);
    for (;;) {
      const double r = std::exp(log_lo + log_span * unit());
      const double t = theta0 + 0.5 * kPi * unit();
      const Point x = Point::polar(r, t);
      const bool near_axis = std::abs(x.x1) < options.axis_tube || std::abs(x.x2) < options.axis_tube;
      const bool inside = r > r_lo && r < r_hi && quadrant_of(x) == instance.quadrants[q];
      if (near_axis || !inside || singular.distance(x) < options.axis_tube) {
        ++redraws;
        continue;
      }
      points.push_back(x);
      owner.push_back(q);
      break;
    }
  }

  std::vector<double> residual(points.size());
  parallel_for(points.size(), options.threads > 0 ? options.threads : default_thread_count(), [&](std::size_t i) {
    const double lu = apply_nondiv(instance.coefficients, instance.solution, points[i]).value;
    const double f = instance.rhs.f.value(points[i]);
    residual[i] = std::abs(lu - f) / (1.0 + std::abs(f));
  });

  for (std::size_t q = 0; q < nq; ++q) {
    double worst = 0.0;
    Point where{};
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (owner[i] != q) continue;
      // NaN propagates as the worst value.
      if (!(residual[i] <= worst)) {
        worst = residual[i];
        where = points[i];
      }
    }
    report.add(std::string("max_relative_residual_quadrant_") + to_string(instance.quadrants[q]), at_point(where),
               worst, options.threshold);
  }
  std::vector<double> sorted = residual;
  std::sort(sorted.begin(), sorted.end());
  report.stat("samples", static_cast<double>(points.size()));
  report.stat("redraws", static_cast<double>(redraws));
  report.stat("max", sorted.empty() ? 0.0 : sorted.back());
  report.stat("p50", quantile(sorted, 0.5));
  report.stat("p90", quantile(sorted, 0.9));
  report.stat("p99", quantile(sorted, 0.99));
  report.stat("r_min", r_lo);
  report.stat("r_max", r_hi);
  if (redraws > 0) report.notes.push_back(std::to_string(redraws) + " samples re-drawn near axes or the singular set");
  return report;
}

// ------------------------------------------------------------------ interfaces

VerificationReport interface_flux_suite(const CounterexampleInstance& instance, double threshold) {
  if (instance.kind != InstanceKind::ps || !instance.ps) throw ParameterError("interface suite needs a ps instance");
  const PsProfile& ps = *instance.ps;
  const double nu = ps.params().nu;

  VerificationReport report;
  report.suite = "interface";

  for (int k = 0; k < 4; ++k) {
    // Branch k - 1 ends at the interface where branch k starts.
    const int left = (k + 3) % 4;
    const double t = 0.5 * kPi * k;
    const double t_left = k == 0 ? 2.0 * kPi : t;
    const double wl = ps.w(left, t_left);
    const double wr = ps.w(k, t);
    const double fl = ps.coefficient(left) * ps.w_prime(left, t_left);
    const double fr = ps.coefficient(k) * ps.w_prime(k, t);
    for (double r : {0.1, 1.0, 5.0}) {
      const std::string where = "theta=" + fmt(t) + " r=" + fmt(r);
      const double ur = std::pow(r, nu);
      const double dr = std::pow(r, nu - 1.0);
      report.add("u_jump", where, ur * std::abs(wl - wr), threshold * std::max(1.0, ur * std::abs(wr)));
      report.add("flux_jump", where, dr * std::abs(fl - fr), threshold * std::max(1.0, dr * std::abs(fr)));
    }
  }

  for (int k = 0; k < 4; ++k) {
    double worst = 0.0;
    double worst_lap = 0.0;
    double scale = 0.0;
    double lap_scale = 0.0;
    for (int i = 1; i < 16; ++i) {
      const double t = 0.5 * kPi * (k + i / 16.0);
      const double w = ps.w(k, t);
      worst = std::max(worst, std::abs(ps.w_second(k, t) + nu * nu * w));
      scale = std::max({scale, std::abs(w), std::abs(ps.w_second(k, t))});
      const FieldJet j = ps.u().jet(Point::polar(1.0, t));
      worst_lap = std::max(worst_lap, std::abs(j.hessian[0][0] + j.hessian[1][1]));
      lap_scale = std::max({lap_scale, std::abs(j.hessian[0][0]), std::abs(j.hessian[1][1])});
    }
    const std::string where = "branch=" + std::to_string(k);
    report.add("angular_ode", where, worst, threshold * std::max(1.0, scale));
    report.add("laplacian", where, worst_lap, threshold * std::max(1.0, lap_scale));
  }
  return report;
}

// ------------------------------------------------------------------ finite differences

VerificationReport derivative_check(const ScalarField& field, std::size_t points, std::uint64_t seed,
                                    const SampleRegion& region, const DerivativeOptions& options) {
  if (!(region.r_lo >= 0.0 && region.r_hi > region.r_lo && region.theta_hi > region.theta_lo)) {
    throw ParameterError("empty sampling region");
  }
  VerificationReport report;
  report.suite = "derivative";
  report.seed = seed;

  const SingularSet& singular = field.singular_set();
  Uniform unit(seed);
  std::vector<Point> xs;
  std::size_t redraws = 0;
  while (xs.size() < points) {
    const double r = region.r_lo + (region.r_hi - region.r_lo) * unit();
    const double t = region.theta_lo + (region.theta_hi - region.theta_lo) * unit();
    const Point x = Point::polar(r, t);
    const double clear = singular.distance(x);
    if (clear < options.clearance) {
      ++redraws;
      if (redraws > 1000 * (points + 1)) throw ParameterError("sampling region lies inside the singular set");
      continue;
    }
    xs.push_back(x);
  }

  // Each error is the smaller of steps h and h/2: truncation shrinks with the
  // step, a wrong jet does not.
  const double h = options.h;
  auto stencil = [](auto&& g, Point x, int axis, double step) {
    auto shifted = [&](double s) {
      return axis == 0 ? g(Point{x.x1 + s * step, x.x2}) : g(Point{x.x1, x.x2 + s * step});
    };
    return (-shifted(2.0) + 8.0 * shifted(1.0) - 8.0 * shifted(-1.0) + shifted(-2.0)) / (12.0 * step);
  };
  auto fd_error = [&](auto&& g, Point x, int axis, double exact) {
    return std::min(std::abs(stencil(g, x, axis, h) - exact), std::abs(stencil(g, x, axis, 0.5 * h) - exact));
  };

  double worst_g = 0.0;
  double worst_h = 0.0;
  Point at_g{};
  Point at_h{};
  for (const Point& x : xs) {
    const FieldJet exact = field.jet(x);
    const auto value = [&](Point y) { return field.value(y); };
    const double g_inf = std::max(std::abs(exact.gradient[0]), std::abs(exact.gradient[1]));
    double g_err = 0.0;
    for (int a = 0; a < 2; ++a) {
      g_err = std::max(g_err, fd_error(value, x, a, exact.gradient[static_cast<std::size_t>(a)]));
    }
    double h_inf = 0.0;
    double h_err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const auto grad_i = [&](Point y) { return field.jet(y).gradient[static_cast<std::size_t>(i)]; };
      for (int j = 0; j < 2; ++j) {
        const double e = exact.hessian[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        h_inf = std::max(h_inf, std::abs(e));
        h_err = std::max(h_err, fd_error(grad_i, x, j, e));
      }
    }
    const double rg = g_err / (g_inf + 1e-8);
    const double rh = h_err / (h_inf + 1e-8);
    if (!(rg <= worst_g)) {
      worst_g = rg;
      at_g = x;
    }
    if (!(rh <= worst_h)) {
      worst_h = rh;
      at_h = x;
    }
  }
  report.add("gradient_relative_error", at_point(at_g), worst_g, options.gradient_threshold);
  report.add("hessian_relative_error", at_point(at_h), worst_h, options.hessian_threshold);
  report.stat("points", static_cast<double>(xs.size()));
  report.stat("redraws", static_cast<double>(redraws));
  report.stat("h", h);
  return report;
}

// ------------------------------------------------------------------ quadrature oracles

VerificationReport quadrature_suite(double relative_tol, const QuadratureOptions& options) {
  VerificationReport report;
  report.suite = "quadrature";
  const Tolerance tol(0.0, relative_tol);

  auto check = [&](const std::string& name, const Integrand& f, const Domain2D& d, double exact) {
    const QuadratureResult q = integrate(f, d, tol, options);
    const double target = relative_tol * std::abs(exact);
    report.add(name + "_error", "exact=" + fmt(exact), std::abs(q.value - exact), target);
    report.add(name + "_estimate", "value=" + fmt(q.value), q.error_estimate, target);
  };

  const double span = 1.3;
  const double radius = 2.0;
  for (double s : {-1.5, -1.0, 0.0, 1.0, 3.0}) {
    const double exact = span * std::pow(radius, s + 2.0) / (s + 2.0);
    check("monomial_s=" + fmt(s), [s](Point x) { return std::pow(x.norm(), s); }, Domain2D::sector(0.2, 0.2 + span, radius),
          exact);
  }
  check("unit_disk_area", [](Point) { return 1.0; }, Domain2D::disk(1.0), kPi);
  check("inverse_radius_disk", [](Point x) { return 1.0 / x.norm(); }, Domain2D::disk(1.0), 2.0 * kPi);
  const int n = 256;
  check("inverse_square_annulus_n=256", [](Point x) { return 1.0 / (x.x1 * x.x1 + x.x2 * x.x2); },
        Domain2D::sector(0.0, 1.0, 2.0, 2.0 / n), std::log(static_cast<double>(n)));

  const LpNorm l2 = lp_norm(constant(1.0), JetKind::value, Domain2D::disk(1.0), 2.0, tol, options);
  const double root_pi = std::sqrt(kPi);
  report.add("constant_l2_norm_error", "exact=" + fmt(root_pi), std::abs(l2.norm - root_pi), relative_tol * root_pi);
  return report;
}

// ------------------------------------------------------------------ rationals

namespace {

std::int64_t checked(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw ParameterError("rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

Rational make(__int128 num, __int128 den) {
  if (den == 0) throw ParameterError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num;
  __int128 b = den;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(checked(num), checked(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den == 0) throw ParameterError("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

std::optional<Rational> Rational::approximate(double x, std::int64_t max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  // Convergents h/k of the continued fraction of x.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rest = x;
  for (int i = 0; i < 64; ++i) {
    const double a = std::floor(rest);
    if (std::abs(a) > 1e15) break;
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t h2 = ai * h1 + h0;
    const std::int64_t k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= tol * std::max(1.0, std::abs(x))) {
      return Rational(h1, k1);
    }
    const double frac = rest - a;
    if (frac == 0.0) break;
    rest = 1.0 / frac;
  }
  return std::nullopt;
}

std::string Rational::str() const { return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_); }

Rational operator+(const Rational& a, const Rational& b) {
  return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
              static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + Rational(-b.num_, b.den_); }

Rational operator*(const Rational& a, const Rational& b) {
  return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw ParameterError("rational division by zero");
  return make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

// ------------------------------------------------------------------ integrability

const char* to_string(Integrability c) { return c == Integrability::finite ? "finite" : "infinite"; }

Integrability integrability_threshold(const Rational& alpha, const Rational& p) {
  if (!(Rational(1) < p)) throw ParameterError("integrability needs p > 1");
  const Rational e = p * alpha + Rational(2);
  return Rational(0) < e ? Integrability::finite : Integrability::infinite;
}

NumericIntegrability integrability_numeric(double alpha, double p, const QuadratureOptions& options) {
  if (!(p > 1.0) || !std::isfinite(alpha)) throw ParameterError("integrability needs p > 1 and finite alpha");
  NumericIntegrability out;
  const double s = p * alpha;
  // Angular window of one radian: the integral is the radial one.
  const Integrand f = [s](Point x) { return std::pow(x.norm(), s); };
  double total = 0.0;
  double upper = 1.0;
  for (int k = 2; k <= 8; ++k) {
    const double eps = std::pow(10.0, -k);
    const QuadratureResult q = integrate(f, Domain2D::sector(0.0, 1.0, upper, eps), Tolerance(0.0, 1e-10), options);
    total += q.value;
    if (k > 2) out.increments.push_back(q.value);
    out.eps.push_back(eps);
    out.partial.push_back(total);
    upper = eps;
  }
  out.classification = out.increments.back() < out.increments.front() ? Integrability::finite : Integrability::infinite;
  return out;
}

Rational corner_hessian_exponent(const Rational& p) { return (Rational(2) * p - Rational(2)) / p - Rational(2); }

Rational ps_gradient_threshold(const Rational& nu) {
  if (!(nu < Rational(1))) throw ParameterError("no integrability threshold when nu >= 1");
  return Rational(2) / (Rational(1) - nu);
}

}  // namespace cx
