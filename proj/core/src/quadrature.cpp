#include "cx/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

#include "cx/errors.hpp"
#include "cx/parallel.hpp"

namespace cx {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Gauss-Kronrod 7/15 (QUADPACK dqk15).
constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

const GaussRule& rule32() {
  static const GaussRule r = gauss_legendre(32);
  return r;
}

const GaussRule& rule16() {
  static const GaussRule r = gauss_legendre(16);
  return r;
}

struct Neumaier {
  double sum = 0.0;
  double c = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      c += (sum - t) + v;
    } else {
      c += (v - t) + sum;
    }
    sum = t;
  }
  double result() const { return sum + c; }
};

struct Panel {
  // Radial interval [a, b] times angular interval [lo, hi].
  double a = 0.0;
  double b = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
  double error = 0.0;
  double radial_error = 0.0;
  double angular_error = 0.0;
  bool final = false;
};

std::string where(Point x) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", x.x1, x.x2);
  return buf;
}

bool splittable(double a, double b) {
  const double mid = 0.5 * (a + b);
  return mid > a && mid < b && (b - a) > 8.0 * kEps * std::max(std::abs(a), std::abs(b));
}

class PolarIntegrator {
 public:
  explicit PolarIntegrator(const Integrand& f) : f_(f) {}

  void evaluate(Panel& panel) const {
    std::array<Node, 32> n32{};
    std::array<Node, 16> n16{};
    const double half = 0.5 * (panel.hi - panel.lo);
    const double mid = 0.5 * (panel.hi + panel.lo);
    for (std::size_t i = 0; i < 32; ++i) {
      const double t = mid + half * rule32().nodes[i];
      n32[i] = {std::cos(t), std::sin(t), half * rule32().weights[i]};
    }
    for (std::size_t i = 0; i < 16; ++i) {
      const double t = mid + half * rule16().nodes[i];
      n16[i] = {std::cos(t), std::sin(t), half * rule16().weights[i]};
    }
    // r * (angular integral) and r * |Q32 - Q16|.
    auto angular = [&](double r) {
      double s32 = 0.0;
      for (const Node& n : n32) s32 += n.w * eval(r, n);
      double s16 = 0.0;
      for (const Node& n : n16) s16 += n.w * eval(r, n);
      return std::pair<double, double>{r * s32, r * std::abs(s32 - s16)};
    };

    const double hl = 0.5 * (panel.b - panel.a);
    const double c = 0.5 * (panel.a + panel.b);
    std::array<double, 15> fv{};
    std::array<double, 15> ev{};
    // fv[0..6]: c - hl x_k, fv[7]: c, fv[8..14]: c + hl x_k.
    for (int k = 0; k < 7; ++k) {
      const auto l = angular(c - hl * kXgk[static_cast<std::size_t>(k)]);
      const auto h = angular(c + hl * kXgk[static_cast<std::size_t>(k)]);
      fv[static_cast<std::size_t>(k)] = l.first;
      ev[static_cast<std::size_t>(k)] = l.second;
      fv[static_cast<std::size_t>(14 - k)] = h.first;
      ev[static_cast<std::size_t>(14 - k)] = h.second;
    }
    const auto m = angular(c);
    fv[7] = m.first;
    ev[7] = m.second;

    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    double resabs = std::abs(resk);
    double angular_err = kWgk[7] * ev[7];
    for (int k = 0; k < 7; ++k) {
      const auto ks = static_cast<std::size_t>(k);
      const double pair = fv[ks] + fv[14 - ks];
      resk += kWgk[ks] * pair;
      resabs += kWgk[ks] * (std::abs(fv[ks]) + std::abs(fv[14 - ks]));
      angular_err += kWgk[ks] * (ev[ks] + ev[14 - ks]);
      if (k % 2 == 1) resg += kWg[ks / 2] * pair;
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fv[7] - reskh);
    for (std::size_t k = 0; k < 7; ++k) {
      resasc += kWgk[k] * (std::abs(fv[k] - reskh) + std::abs(fv[14 - k] - reskh));
    }
    const double dh = std::abs(hl);
    resabs *= dh;
    resasc *= dh;
    double err = std::abs((resk - resg) * hl);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
    panel.value = resk * hl;
    panel.radial_error = err;
    panel.angular_error = angular_err * dh;
    panel.error = panel.radial_error + panel.angular_error;
  }

 private:
  struct Node {
    double c;
    double s;
    double w;
  };

  double eval(double r, const Node& n) const {
    const Point x{r * n.c, r * n.s};
    const double v = f_(x);
    if (!std::isfinite(v)) {
      throw QuadratureError("integrand is not finite at " + where(x), QuadratureResult{});
    }
    return v;
  }

  const Integrand& f_;
};

std::vector<std::pair<double, double>> angular_panels(const Domain2D& domain) {
  const auto edges = domain.angular_edges();
  const int parts = domain.angular_subdivisions;
  std::vector<std::pair<double, double>> out;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double w = (edges[k + 1] - edges[k]) / parts;
    for (int s = 0; s < parts; ++s) {
      const double lo = edges[k] + s * w;
      const double hi = (s + 1 == parts) ? edges[k + 1] : lo + w;
      out.emplace_back(lo, hi);
    }
  }
  return out;
}

std::vector<Panel> initial_panels(const Domain2D& domain) {
  const auto edges = domain.radial_edges();
  std::vector<std::pair<double, double>> radial;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double a = edges[k];
    const double b = edges[k + 1];
    if (a > 0.0 && b / a > 2.0) {
      // Geometric grading with ratio <= 2.
      const int m = static_cast<int>(std::ceil(std::log2(b / a)));
      const double ratio = std::pow(b / a, 1.0 / m);
      double lo = a;
      for (int i = 0; i < m; ++i) {
        const double hi = (i + 1 == m) ? b : lo * ratio;
        radial.emplace_back(lo, hi);
        lo = hi;
      }
    } else {
      radial.emplace_back(a, b);
    }
  }
  std::vector<Panel> panels;
  for (const auto& [lo, hi] : angular_panels(domain)) {
    for (const auto& [a, b] : radial) {
      Panel p;
      p.a = a;
      p.b = b;
      p.lo = lo;
      p.hi = hi;
      panels.push_back(p);
    }
  }
  return panels;
}


}  // namespace

// ------------------------------------------------------------------ Domain2D

Domain2D Domain2D::sector(double theta_lo, double theta_hi, double r_hi, double r_lo) {
  Domain2D d;
  d.kind = DomainKind::sector;
  d.theta_lo = theta_lo;
  d.theta_hi = theta_hi;
  d.r_lo = r_lo;
  d.r_hi = r_hi;
  d.validate();
  return d;
}

Domain2D Domain2D::disk(double radius) {
  Domain2D d = sector(0.0, 2.0 * kPi, radius);
  d.kind = DomainKind::annulus;
  return d;
}

Domain2D Domain2D::annulus(double r_lo, double r_hi) {
  Domain2D d = sector(0.0, 2.0 * kPi, r_hi, r_lo);
  d.kind = DomainKind::annulus;
  return d;
}

Domain2D Domain2D::quadrant(Quadrant q, double radius) {
  const double lo = index_of(q) * 0.5 * kPi;
  Domain2D d = sector(lo, lo + 0.5 * kPi, radius);
  d.kind = DomainKind::quadrant;
  return d;
}

Domain2D Domain2D::truncated_plane(double radius) {
  Domain2D d = sector(0.0, 2.0 * kPi, radius);
  d.kind = DomainKind::truncated_plane;
  d.angular_breaks = {0.5 * kPi, kPi, 1.5 * kPi};
  return d;
}

Domain2D& Domain2D::add_angular_breaks(const std::vector<double>& angles) {
  angular_breaks.insert(angular_breaks.end(), angles.begin(), angles.end());
  return *this;
}

Domain2D& Domain2D::add_radial_breaks(const std::vector<double>& radii) {
  radial_breaks.insert(radial_breaks.end(), radii.begin(), radii.end());
  return *this;
}

Domain2D& Domain2D::subdivide_angles(int parts) {
  angular_subdivisions = parts;
  validate();
  return *this;
}

void Domain2D::validate() const {
  if (!(theta_hi > theta_lo) || theta_hi - theta_lo > 2.0 * kPi * (1.0 + 4.0 * kEps)) {
    throw ParameterError("angular range must be non-empty and at most 2 pi");
  }
  if (!(r_lo >= 0.0) || !(r_hi > r_lo) || !std::isfinite(r_hi)) {
    throw ParameterError("radial range must satisfy 0 <= r_lo < r_hi < inf");
  }
  if (angular_subdivisions < 1) throw ParameterError("angular_subdivisions must be >= 1");
}

std::vector<double> Domain2D::angular_edges() const {
  validate();
  std::vector<double> e{theta_lo, theta_hi};
  const double span = theta_hi - theta_lo;
  for (double t : angular_breaks) {
    // Bring each break into [theta_lo, theta_lo + 2 pi).
    double s = std::fmod(t - theta_lo, 2.0 * kPi);
    if (s < 0.0) s += 2.0 * kPi;
    const double tol = 1e-13 * std::max(1.0, span);
    if (s > tol && s < span - tol) e.push_back(theta_lo + s);
  }
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

std::vector<double> Domain2D::radial_edges() const {
  validate();
  std::vector<double> e{r_lo, r_hi};
  for (double r : radial_breaks) {
    if (r > r_lo && r < r_hi) e.push_back(r);
  }
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

double Tolerance::target(double value) const { return std::max(absolute, relative * std::abs(value)); }

int default_thread_count() {
  if (const char* env = std::getenv("CX_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// ------------------------------------------------------------------ integrate

QuadratureResult integrate(const Integrand& f, const Domain2D& domain, Tolerance tol,
                           const QuadratureOptions& options) {
  if (!(tol.absolute > 0.0 || tol.relative > 0.0)) throw ParameterError("tolerance must be positive");
  const PolarIntegrator integrator(f);
  const int threads = options.threads > 0 ? options.threads : default_thread_count();

  std::vector<Panel> panels = initial_panels(domain);
  parallel_for(panels.size(), threads, [&](std::size_t i) { integrator.evaluate(panels[i]); });

  auto totals = [&panels] {
    Neumaier v;
    Neumaier e;
    for (const auto& p : panels) {
      v.add(p.value);
      e.add(p.error);
    }
    return QuadratureResult{v.result(), e.result(), panels.size()};
  };

  for (;;) {
    const QuadratureResult current = totals();
    const double target = tol.target(current.value);
    if (current.error_estimate <= target) return current;

    // Largest errors first until what remains is below half the target.
    std::vector<std::size_t> order(panels.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&panels](std::size_t l, std::size_t r) { return panels[l].error > panels[r].error; });
    std::vector<char> split(panels.size(), 0);
    double remaining = current.error_estimate;
    std::size_t chosen = 0;
    for (std::size_t idx : order) {
      if (remaining <= 0.5 * target && chosen > 0) break;
      Panel& p = panels[idx];
      if (p.final) continue;
      const bool r_ok = splittable(p.a, p.b);
      const bool t_ok = splittable(p.lo, p.hi);
      if (!r_ok && !t_ok) {
        p.final = true;
        continue;
      }
      // 1: radial bisection, 2: angular bisection.
      split[idx] = (t_ok && (!r_ok || p.angular_error > p.radial_error)) ? 2 : 1;
      remaining -= p.error;
      ++chosen;
    }
    if (chosen == 0) {
      throw QuadratureError("panels cannot be refined further; error estimate " +
                                std::to_string(current.error_estimate) + " exceeds target " + std::to_string(target),
                            current);
    }
    if (panels.size() + chosen > options.max_panels) {
      throw QuadratureError("panel budget of " + std::to_string(options.max_panels) + " exhausted", current);
    }

    std::vector<Panel> next;
    next.reserve(panels.size() + chosen);
    std::vector<std::size_t> fresh;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      if (!split[i]) {
        next.push_back(panels[i]);
        continue;
      }
      Panel l = panels[i];
      Panel r = panels[i];
      if (split[i] == 1) {
        l.b = r.a = 0.5 * (panels[i].a + panels[i].b);
      } else {
        l.hi = r.lo = 0.5 * (panels[i].lo + panels[i].hi);
      }
      fresh.push_back(next.size());
      next.push_back(l);
      fresh.push_back(next.size());
      next.push_back(r);
    }
    panels = std::move(next);
    parallel_for(fresh.size(), threads, [&](std::size_t k) { integrator.evaluate(panels[fresh[k]]); });
  }
}

// ------------------------------------------------------------------ lp_norm

Domain2D with_field_breaks(const Domain2D& domain, const ScalarField& field) {
  Domain2D d = domain;
  const SingularSet& s = field.singular_set();
  if (s.vertex.x1 == 0.0 && s.vertex.x2 == 0.0) {
    d.add_angular_breaks(s.rays);
    d.add_radial_breaks(s.radii);
  }
  return d;
}

LpNorm lp_norm(const ScalarField& field, JetKind jet, const Domain2D& domain, double p, Tolerance tol,
               const QuadratureOptions& options) {
  if (!(p > 1.0) || !std::isfinite(p)) throw ParameterError("p must lie in (1, inf)");
  const int order = jet == JetKind::value ? 0 : (jet == JetKind::gradient ? 1 : 2);
  const Integrand integrand = [&field, order, p](Point x) {
    const Jet j = field.taylor(x, order).jet;
    double sq = 0.0;
    if (order == 0) {
      return std::pow(std::abs(j.value()), p);
    } else if (order == 1) {
      sq = j.coeff(1, 0) * j.coeff(1, 0) + j.coeff(0, 1) * j.coeff(0, 1);
    } else {
      const double h11 = 2.0 * j.coeff(2, 0);
      const double h12 = j.coeff(1, 1);
      const double h22 = 2.0 * j.coeff(0, 2);
      sq = h11 * h11 + 2.0 * h12 * h12 + h22 * h22;
    }
    return std::pow(sq, 0.5 * p);
  };
  const QuadratureResult r = integrate(integrand, with_field_breaks(domain, field), tol, options);
  return LpNorm{std::pow(std::max(r.value, 0.0), 1.0 / p), r};
}

}  // namespace cx
