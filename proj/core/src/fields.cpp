#include "cx/fields.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <utility>

#include "cx/errors.hpp"
#include "field_node.hpp"

namespace cx {

using detail::FieldNode;
using detail::NodeEval;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void normalize(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void append(std::vector<double>& dst, const std::vector<double>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
  normalize(dst);
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

NodeEval zero_eval(int order) { return NodeEval{Jet(order), false, true}; }

// Order <= 2 fast path of Jet::linear_substitution.
Jet substitute(const Jet& j, const Mat2& b) {
  if (j.order() > 2) return j.linear_substitution(b.a11, b.a12, b.a21, b.a22);
  Jet r(j.order());
  r.coeff(0, 0) = j.coeff(0, 0);
  if (j.order() == 0) return r;
  const double g1 = j.coeff(1, 0);
  const double g2 = j.coeff(0, 1);
  r.coeff(1, 0) = b.a11 * g1 + b.a21 * g2;
  r.coeff(0, 1) = b.a12 * g1 + b.a22 * g2;
  if (j.order() == 1) return r;
  // Hessian H = [[2 c20, c11], [c11, 2 c02]]; result B^T H B.
  const double h11 = 2.0 * j.coeff(2, 0);
  const double h12 = j.coeff(1, 1);
  const double h22 = 2.0 * j.coeff(0, 2);
  const double hb11 = h11 * b.a11 + h12 * b.a21;
  const double hb12 = h11 * b.a12 + h12 * b.a22;
  const double hb21 = h12 * b.a11 + h22 * b.a21;
  const double hb22 = h12 * b.a12 + h22 * b.a22;
  r.coeff(2, 0) = 0.5 * (b.a11 * hb11 + b.a21 * hb21);
  r.coeff(1, 1) = b.a11 * hb12 + b.a21 * hb22;
  r.coeff(0, 2) = 0.5 * (b.a12 * hb12 + b.a22 * hb22);
  return r;
}

// g(d) = f(sigma d) where sigma negates one increment variable.
Jet flipped(const Jet& j, Axis axis) {
  Jet r = j;
  for (int d = 1; d <= j.order(); ++d) {
    for (int jj = 0; jj <= d; ++jj) {
      const int i = d - jj;
      const int power = axis == Axis::x1 ? i : jj;
      if (power % 2 == 1) r.coeff(i, jj) = -r.coeff(i, jj);
    }
  }
  return r;
}

// ------------------------------------------------------------------ nodes

class ConstantNode final : public FieldNode {
 public:
  explicit ConstantNode(double c) : c_(c) {}
  NodeEval eval(Point, int order) const override {
    NodeEval e{Jet::constant(c_, order)};
    e.zero = c_ == 0.0;
    return e;
  }
  std::string describe() const override { return num(c_); }

 private:
  double c_;
};

class CoordinateNode final : public FieldNode {
 public:
  explicit CoordinateNode(int axis) : axis_(axis) {}
  NodeEval eval(Point x, int order) const override {
    return NodeEval{Jet::coordinate(axis_ == 0 ? x.x1 : x.x2, axis_, order)};
  }
  std::string describe() const override { return axis_ == 0 ? "x1" : "x2"; }

 private:
  int axis_;
};

class LinearCombinationNode final : public FieldNode {
 public:
  LinearCombinationNode(std::vector<double> w, std::vector<ScalarField> t)
      : weights_(std::move(w)), terms_(std::move(t)) {
    vanishes_near_vertex = true;
    for (const auto& term : terms_) {
      const auto& s = term.singular_set();
      if (s.singular_vertex && !term.vanishes_near_vertex()) singular.singular_vertex = true;
      if (!s.empty()) singular.vertex = s.vertex;
      append(singular.rays, s.rays);
      append(singular.radii, s.radii);
      vanishes_near_vertex = vanishes_near_vertex && term.vanishes_near_vertex();
    }
  }

  NodeEval eval(Point x, int order) const override {
    NodeEval out{Jet(order), false, true};
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      NodeEval e = terms_[k].node().eval(x, order);
      out.on_interface = out.on_interface || e.on_interface;
      if (e.zero) continue;
      out.zero = false;
      e.jet *= weights_[k];
      out.jet += e.jet;
    }
    return out;
  }

  std::string describe() const override {
    std::string s = "sum(";
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      if (k) s += ", ";
      if (weights_[k] != 1.0) s += num(weights_[k]) + "*";
      s += terms_[k].describe();
    }
    return s + ")";
  }

 private:
  std::vector<double> weights_;
  std::vector<ScalarField> terms_;
};

class ProductNode final : public FieldNode {
 public:
  ProductNode(ScalarField a, ScalarField b) {
    // Factors that vanish near the vertex go first so the other factor is
    // never evaluated where it may be singular.
    if (b.vanishes_near_vertex() && !a.vanishes_near_vertex()) std::swap(a, b);
    a_ = std::move(a);
    b_ = std::move(b);
    const auto& sa = a_.singular_set();
    const auto& sb = b_.singular_set();
    singular.singular_vertex = (sa.singular_vertex && !b_.vanishes_near_vertex()) ||
                               (sb.singular_vertex && !a_.vanishes_near_vertex());
    singular.vertex = sa.empty() ? sb.vertex : sa.vertex;
    singular.rays = sa.rays;
    append(singular.rays, sb.rays);
    singular.radii = sa.radii;
    append(singular.radii, sb.radii);
    vanishes_near_vertex = a_.vanishes_near_vertex() || b_.vanishes_near_vertex();
  }

  NodeEval eval(Point x, int order) const override {
    NodeEval ea = a_.node().eval(x, order);
    if (ea.zero) return ea;
    NodeEval eb = b_.node().eval(x, order);
    if (eb.zero) {
      eb.on_interface = eb.on_interface || ea.on_interface;
      return eb;
    }
    return NodeEval{ea.jet * eb.jet, ea.on_interface || eb.on_interface, false};
  }

  std::string describe() const override { return "product(" + a_.describe() + ", " + b_.describe() + ")"; }

 private:
  ScalarField a_;
  ScalarField b_;
};

class PullbackNode final : public FieldNode {
 public:
  PullbackNode(ScalarField child, const Mat2& a, Point shift)
      : child_(std::move(child)), a_(a), inv_(a.inverse()), shift_(shift) {
    const auto& s = child_.singular_set();
    singular.singular_vertex = s.singular_vertex;
    singular.vertex = a_.apply(s.vertex) + shift_;
    for (double t : s.rays) {
      const Point d = a_.apply(Point::polar(1.0, t));
      singular.rays.push_back(wrap_angle(d.angle()));
    }
    normalize(singular.rays);
    if (a_ == Mat2::identity()) singular.radii = s.radii;
    vanishes_near_vertex = child_.vanishes_near_vertex();
  }

  NodeEval eval(Point x, int order) const override {
    NodeEval e = child_.node().eval(inv_.apply(x - shift_), order);
    if (!e.zero) e.jet = substitute(e.jet, inv_);
    return e;
  }

  std::string describe() const override {
    return "pullback([" + num(a_.a11) + ", " + num(a_.a12) + "; " + num(a_.a21) + ", " + num(a_.a22) +
           "], " + child_.describe() + ")";
  }

 private:
  ScalarField child_;
  Mat2 a_;
  Mat2 inv_;
  Point shift_;
};

class ReflectNode final : public FieldNode {
 public:
  ReflectNode(ScalarField child, Axis axis, Parity parity)
      : child_(std::move(child)), axis_(axis), parity_(parity) {
    const auto& s = child_.singular_set();
    singular.singular_vertex = s.singular_vertex;
    singular.vertex = s.vertex;
    singular.radii = s.radii;
    for (double t : s.rays) {
      const Point d = Point::polar(1.0, t);
      const double c = axis_ == Axis::x1 ? d.x1 : d.x2;
      if (c < -1e-15) continue;
      singular.rays.push_back(t);
      singular.rays.push_back(wrap_angle(axis_ == Axis::x1 ? kPi - t : -t));
    }
    if (axis_ == Axis::x1) {
      singular.rays.push_back(0.5 * kPi);
      singular.rays.push_back(1.5 * kPi);
    } else {
      singular.rays.push_back(0.0);
      singular.rays.push_back(kPi);
    }
    normalize(singular.rays);
    vanishes_near_vertex = child_.vanishes_near_vertex();
  }

  NodeEval eval(Point x, int order) const override {
    const double c = axis_ == Axis::x1 ? x.x1 : x.x2;
    if (c >= 0.0) {
      NodeEval e = child_.node().eval(x, order);
      e.on_interface = e.on_interface || c == 0.0;
      return e;
    }
    const Point mirrored = axis_ == Axis::x1 ? Point{-x.x1, x.x2} : Point{x.x1, -x.x2};
    NodeEval e = child_.node().eval(mirrored, order);
    if (!e.zero) {
      e.jet = flipped(e.jet, axis_);
      if (parity_ == Parity::odd) e.jet *= -1.0;
    }
    return e;
  }

  std::string describe() const override {
    return std::string(parity_ == Parity::odd ? "odd" : "even") + "_reflect_x" +
           (axis_ == Axis::x1 ? "1" : "2") + "(" + child_.describe() + ")";
  }

 private:
  ScalarField child_;
  Axis axis_;
  Parity parity_;
};

class PartialNode final : public FieldNode {
 public:
  PartialNode(ScalarField child, int axis) : child_(std::move(child)), axis_(axis) {
    singular = child_.singular_set();
    vanishes_near_vertex = child_.vanishes_near_vertex();
  }

  NodeEval eval(Point x, int order) const override {
    if (order + 1 > kMaxJetOrder) {
      throw EvaluationError("nested derivatives exceed the maximum jet order");
    }
    NodeEval e = child_.node().eval(x, order + 1);
    if (e.zero) return zero_eval(order);
    return NodeEval{e.jet.partial(axis_), e.on_interface, false};
  }

  std::string describe() const override {
    return std::string("D") + (axis_ == 0 ? "1" : "2") + "(" + child_.describe() + ")";
  }

 private:
  ScalarField child_;
  int axis_;
};

class HolomorphicPowerNode final : public FieldNode {
 public:
  HolomorphicPowerNode(double mu, std::complex<double> c, int quarter_turns)
      : mu_(mu), c_(c), k_(((quarter_turns % 4) + 4) % 4) {
    const bool integral = mu_ >= 0.0 && mu_ == std::floor(mu_);
    singular.singular_vertex = !integral;
    if (!integral) singular.rays.push_back(wrap_angle(k_ * 0.5 * kPi + kPi));
  }

  NodeEval eval(Point x, int order) const override {
    // (-i)^k z, exact for quarter turns.
    Point zl = x;
    for (int t = 0; t < k_; ++t) zl = Point{zl.x2, -zl.x1};
    const std::complex<double> z(zl.x1, zl.x2);
    std::complex<double> rot(1.0, 0.0);
    for (int t = 0; t < k_; ++t) rot *= std::complex<double>(0.0, -1.0);

    Jet j(order);
    if (z == 0.0) {
      if (singular.singular_vertex) throw EvaluationError("field is singular at the origin");
      const int m = static_cast<int>(mu_);
      if (m <= order) {
        std::complex<double> f = c_ * factorial(m);
        for (int t = 0; t < m; ++t) f *= rot;
        fill(j, m, f);
      }
      return NodeEval{j};
    }

    const std::complex<double> zinv = 1.0 / z;
    std::complex<double> term = c_ * std::pow(z, mu_);
    for (int m = 0; m <= order; ++m) {
      fill(j, m, term);
      term *= (mu_ - m) * rot * zinv;
    }
    return NodeEval{j};
  }

  std::string describe() const override {
    return "im_power(mu=" + num(mu_) + ", c=(" + num(c_.real()) + "," + num(c_.imag()) + "), k=" +
           std::to_string(k_) + ")";
  }

 private:
  // Coefficients of total degree m from F^(m): D1^a D2^b Im F = Im(i^b F^(a+b)).
  static void fill(Jet& j, int m, std::complex<double> fm) {
    for (int b = 0; b <= m; ++b) {
      const int a = m - b;
      double d = 0.0;
      switch (b % 4) {
        case 0: d = fm.imag(); break;
        case 1: d = fm.real(); break;
        case 2: d = -fm.imag(); break;
        default: d = -fm.real(); break;
      }
      j.coeff(a, b) = d / (factorial(a) * factorial(b));
    }
  }

  double mu_;
  std::complex<double> c_;
  int k_;
};

/// Function of q = |x - center|^2, vanishing for r <= r_in and r >= r_out.
class RadialNode final : public FieldNode {
 public:
  using Profile = std::function<Series(double q0, int order)>;

  RadialNode(Profile profile, Point center, double r_in, double r_out, std::vector<double> radii,
             std::string name)
      : profile_(std::move(profile)), center_(center), r_in_(r_in), r_out_(r_out), name_(std::move(name)) {
    singular.vertex = center;
    singular.radii = std::move(radii);
    vanishes_near_vertex = r_in_ > 0.0;
  }

  NodeEval eval(Point x, int order) const override {
    const Point d = x - center_;
    const double q0 = d.x1 * d.x1 + d.x2 * d.x2;
    const double r = std::sqrt(q0);
    if (r <= r_in_ || r >= r_out_) return zero_eval(order);
    Jet q = Jet::constant(q0, order);
    if (order >= 1) {
      q.coeff(1, 0) = 2.0 * d.x1;
      q.coeff(0, 1) = 2.0 * d.x2;
    }
    if (order >= 2) {
      q.coeff(2, 0) = 1.0;
      q.coeff(0, 2) = 1.0;
    }
    const Series s = profile_(q0, order);
    return NodeEval{q.compose(s.coefficients())};
  }

  std::string describe() const override { return name_; }

 private:
  Profile profile_;
  Point center_;
  double r_in_;
  double r_out_;
  std::string name_;
};

class PiecewisePolarNode final : public FieldNode {
 public:
  PiecewisePolarNode(std::array<ScalarField, 4> branches, std::string name)
      : branches_(std::move(branches)), name_(std::move(name)) {
    singular.singular_vertex = true;
    singular.rays = {0.0, 0.5 * kPi, kPi, 1.5 * kPi};
  }

  NodeEval eval(Point x, int order) const override {
    if (x.x1 == 0.0 && x.x2 == 0.0) throw EvaluationError("field is singular at the origin");
    NodeEval e = branches_[static_cast<std::size_t>(index_of(quadrant_of(x)))].node().eval(x, order);
    e.on_interface = on_axis(x);
    return e;
  }

  std::string describe() const override { return name_; }

 private:
  std::array<ScalarField, 4> branches_;
  std::string name_;
};

ScalarField make(std::shared_ptr<const FieldNode> n) { return ScalarField(std::move(n)); }

// Below this distance from the ends of [0, 1] every derivative of eta up to
// kMaxJetOrder is under 1e-260 in magnitude; the series is flushed.
constexpr double kFlatMargin = 1.0 / 700.0;

}  // namespace

// ------------------------------------------------------------------ SingularSet

double SingularSet::distance(Point x) const {
  if (!singular_vertex && rays.empty()) return std::numeric_limits<double>::infinity();
  const Point d = x - vertex;
  double best = d.norm();
  for (double t : rays) {
    const Point u = Point::polar(1.0, t);
    const double along = d.x1 * u.x1 + d.x2 * u.x2;
    if (along > 0.0) best = std::min(best, std::abs(d.x1 * u.x2 - d.x2 * u.x1));
  }
  return best;
}

// ------------------------------------------------------------------ ScalarField

ScalarField::ScalarField() : node_(std::make_shared<ConstantNode>(0.0)) {}

ScalarField::ScalarField(std::shared_ptr<const detail::FieldNode> node) : node_(std::move(node)) {}

TaylorEval ScalarField::taylor(Point x, int order) const {
  if (!x.finite()) throw EvaluationError("non-finite evaluation point");
  NodeEval e = node_->eval(x, order);
  return TaylorEval{e.jet, e.on_interface};
}

FieldJet ScalarField::jet(Point x) const {
  const TaylorEval t = taylor(x, 2);
  FieldJet f;
  f.value = t.jet.coeff(0, 0);
  f.gradient = {t.jet.coeff(1, 0), t.jet.coeff(0, 1)};
  f.hessian = {{{2.0 * t.jet.coeff(2, 0), t.jet.coeff(1, 1)}, {t.jet.coeff(1, 1), 2.0 * t.jet.coeff(0, 2)}}};
  f.on_interface = t.on_interface;
  return f;
}

double ScalarField::value(Point x) const { return taylor(x, 0).jet.value(); }

const SingularSet& ScalarField::singular_set() const { return node_->singular; }

bool ScalarField::vanishes_near_vertex() const { return node_->vanishes_near_vertex; }

std::string ScalarField::describe() const { return node_->describe(); }

FieldJet eval_jet(const ScalarField& field, Point x) { return field.jet(x); }

// ------------------------------------------------------------------ primitives

ScalarField constant(double c) { return make(std::make_shared<ConstantNode>(c)); }

ScalarField coordinate(int coordinate) {
  if (coordinate != 1 && coordinate != 2) throw ParameterError("coordinate must be 1 or 2");
  return make(std::make_shared<CoordinateNode>(coordinate - 1));
}

ScalarField linear_combination(const std::vector<double>& weights, const std::vector<ScalarField>& terms) {
  if (weights.size() != terms.size()) throw ParameterError("weights and terms differ in length");
  return make(std::make_shared<LinearCombinationNode>(weights, terms));
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) { return linear_combination({1.0, 1.0}, {a, b}); }

ScalarField operator-(const ScalarField& a, const ScalarField& b) { return linear_combination({1.0, -1.0}, {a, b}); }

ScalarField operator*(const ScalarField& a, const ScalarField& b) { return make(std::make_shared<ProductNode>(a, b)); }

ScalarField operator*(double s, const ScalarField& a) { return linear_combination({s}, {a}); }

ScalarField affine_pullback(const ScalarField& field, const Mat2& a, Point shift) {
  return make(std::make_shared<PullbackNode>(field, a, shift));
}

ScalarField reflect(const ScalarField& field, Axis axis, Parity parity) {
  return make(std::make_shared<ReflectNode>(field, axis, parity));
}

ScalarField partial(const ScalarField& field, int coordinate) {
  if (coordinate != 1 && coordinate != 2) throw ParameterError("coordinate must be 1 or 2");
  return make(std::make_shared<PartialNode>(field, coordinate - 1));
}

ScalarField laplacian(const ScalarField& field) {
  return partial(partial(field, 1), 1) + partial(partial(field, 2), 2);
}

// ------------------------------------------------------------------ corner harmonic

CornerParams CornerParams::from_angle(double omega) {
  if (!(omega > 0.0 && omega < kPi)) throw ParameterError("opening angle must lie in (0, pi)");
  return CornerParams{omega, kPi / omega};
}

CornerParams omega_for_p(double p) {
  if (!(p > 2.0) || !std::isfinite(p)) throw ParameterError("p must be finite and > 2");
  return CornerParams{kPi * p / (2.0 * p - 2.0), (2.0 * p - 2.0) / p};
}

ScalarField holomorphic_power(double mu, std::array<double, 2> c, int quarter_turns) {
  return make(std::make_shared<HolomorphicPowerNode>(mu, std::complex<double>(c[0], c[1]), quarter_turns));
}

ScalarField corner_harmonic(const CornerParams& params) {
  auto node = std::make_shared<HolomorphicPowerNode>(params.exponent, std::complex<double>(1.0, 0.0), 0);
  // Boundary rays of the sector; the branch cut at pi is already recorded.
  auto& rays = node->singular.rays;
  rays.push_back(0.0);
  rays.push_back(params.omega);
  normalize(rays);
  return make(std::move(node));
}

// ------------------------------------------------------------------ cutoffs

Series smooth_step_series(double r0, int order) {
  if (r0 <= kFlatMargin) return Series::constant(0.0, order);
  if (r0 >= 1.0 - kFlatMargin) return Series::constant(1.0, order);
  const Series s = Series::variable(r0, order);
  // eta = logistic(t) with t = 1/(1-s) - 1/s.
  const Series t = reciprocal(1.0 - s) - reciprocal(s);
  if (t.value() <= 0.0) {
    const Series e = exp(t);
    return e / (1.0 + e);
  }
  return reciprocal(1.0 + exp(-1.0 * t));
}

SmoothStep smooth_step(double r) {
  const Series s = smooth_step_series(r, 2);
  return SmoothStep{s[0], s.derivative(1), s.derivative(2)};
}

CutoffParams::CutoffParams(int n_) : n(n_) {
  if (n < 2) throw ParameterError("cutoff scale n must be >= 2");
}

ScalarField cutoff(const CutoffParams& params) {
  const double n = params.n;
  auto profile = [n](double q0, int order) {
    const Series r = sqrt(Series::variable(q0, order));
    const Series s1 = n * r - 1.0;
    const Series s2 = 3.0 - r;
    const Series e1 = s1.compose(smooth_step_series(s1.value(), order).coefficients());
    const Series e2 = s2.compose(smooth_step_series(s2.value(), order).coefficients());
    return e1 * e2;
  };
  return make(std::make_shared<RadialNode>(
      profile, Point{}, params.inner_zero(), params.outer_zero(),
      std::vector<double>{params.inner_zero(), params.inner_one(), params.outer_one(), params.outer_zero()},
      "cutoff(n=" + std::to_string(params.n) + ")"));
}

ScalarField bump(Point center, double radius) {
  if (!(radius > 0.0)) throw ParameterError("bump radius must be positive");
  const double rho2 = radius * radius;
  auto profile = [rho2](double q0, int order) {
    const Series t = 1.0 - Series::variable(q0, order) * (1.0 / rho2);
    if (t.value() <= kFlatMargin) return Series::constant(0.0, order);
    return exp(1.0 - reciprocal(t));
  };
  return make(std::make_shared<RadialNode>(profile, center, -1.0, radius, std::vector<double>{},
                                           "bump(c=(" + num(center.x1) + "," + num(center.x2) +
                                               "), rho=" + num(radius) + ")"));
}

TruncatedCorner truncated_corner(const CornerParams& params, int n) {
  const ScalarField v = corner_harmonic(params);
  const ScalarField zeta = cutoff(CutoffParams(n));
  const ScalarField grad_dot = partial(v, 1) * partial(zeta, 1) + partial(v, 2) * partial(zeta, 2);
  const ScalarField h = linear_combination({2.0, 1.0}, {grad_dot, v * laplacian(zeta)});
  return TruncatedCorner{v * zeta, h};
}

// ------------------------------------------------------------------ piecewise-polar profile

PsParams PsParams::from_theta0(double theta0) {
  if (!(theta0 > 0.0 && theta0 < 0.5 * kPi)) throw ParameterError("theta0 must lie in (0, pi/2)");
  const double t = std::tan(theta0);
  return PsParams{theta0, 4.0 * theta0 / kPi, 1.0 / (t * t)};
}

PsProfile::PsProfile(const PsParams& params) : params_(params) {
  if (!(params.nu > 0.0) || !(params.K > 0.0)) throw ParameterError("nu and K must be positive");
  // Branch k is Im(s_k e^{-i nu pi/4} (e^{-i k pi/2} z)^nu).
  const std::complex<double> base = std::polar(1.0, -params.nu * 0.25 * kPi);
  const double inv_sqrt_k = 1.0 / std::sqrt(params.K);
  const std::array<std::complex<double>, 4> s = {std::complex<double>(1.0, 0.0),
                                                 std::complex<double>(0.0, inv_sqrt_k),
                                                 std::complex<double>(-1.0, 0.0),
                                                 std::complex<double>(0.0, -inv_sqrt_k)};
  std::array<ScalarField, 4> branches;
  for (int k = 0; k < 4; ++k) {
    const std::complex<double> c = s[static_cast<std::size_t>(k)] * base;
    branches[static_cast<std::size_t>(k)] = holomorphic_power(params.nu, {c.real(), c.imag()}, k);
  }
  u_ = make(std::make_shared<PiecewisePolarNode>(
      branches, "ps_profile(nu=" + num(params.nu) + ", K=" + num(params.K) + ")"));
}

double PsProfile::w(int branch, double theta) const {
  const double nu = params_.nu;
  const double inv_sqrt_k = 1.0 / std::sqrt(params_.K);
  switch (branch) {
    case 0: return std::sin(nu * (theta - 0.25 * kPi));
    case 1: return inv_sqrt_k * std::cos(nu * (theta - 0.75 * kPi));
    case 2: return -std::sin(nu * (theta - 1.25 * kPi));
    case 3: return -inv_sqrt_k * std::cos(nu * (theta - 1.75 * kPi));
    default: throw ParameterError("branch must be 0..3");
  }
}

double PsProfile::w_prime(int branch, double theta) const {
  const double nu = params_.nu;
  const double inv_sqrt_k = 1.0 / std::sqrt(params_.K);
  switch (branch) {
    case 0: return nu * std::cos(nu * (theta - 0.25 * kPi));
    case 1: return -nu * inv_sqrt_k * std::sin(nu * (theta - 0.75 * kPi));
    case 2: return -nu * std::cos(nu * (theta - 1.25 * kPi));
    case 3: return nu * inv_sqrt_k * std::sin(nu * (theta - 1.75 * kPi));
    default: throw ParameterError("branch must be 0..3");
  }
}

double PsProfile::w_second(int branch, double theta) const {
  const double nu = params_.nu;
  const double inv_sqrt_k = 1.0 / std::sqrt(params_.K);
  switch (branch) {
    case 0: return -nu * nu * std::sin(nu * (theta - 0.25 * kPi));
    case 1: return -nu * nu * inv_sqrt_k * std::cos(nu * (theta - 0.75 * kPi));
    case 2: return nu * nu * std::sin(nu * (theta - 1.25 * kPi));
    case 3: return nu * nu * inv_sqrt_k * std::cos(nu * (theta - 1.75 * kPi));
    default: throw ParameterError("branch must be 0..3");
  }
}

double PsProfile::coefficient(int branch) const { return (branch % 2 == 0) ? 1.0 : params_.K; }

PsProfile ps_profile(double theta0) { return PsProfile(PsParams::from_theta0(theta0)); }

}  // namespace cx
