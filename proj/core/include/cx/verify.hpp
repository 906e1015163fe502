#pragma once

// Certification suites: strong residuals, interface and flux conditions of
// the piecewise-polar profile, finite-difference oracles for exact jets,
// quadrature oracles and the integrability classification of radial powers.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cx/construct.hpp"
#include "cx/fields.hpp"
#include "cx/quadrature.hpp"

namespace cx {

struct CheckRecord {
  std::string name;
  /// Point or parameters the check refers to.
  std::string location;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;
  /// Summary numbers (quantiles, counts), in insertion order.
  std::vector<std::pair<std::string, double>> stats;
  std::vector<std::string> notes;
  bool pass = true;

  /// Records `measured <= threshold` (NaN fails).
  void add(std::string name, std::string location, double measured, double threshold);
  void add(CheckRecord record);
  void stat(std::string name, double value);
  /// Appends another report's checks, prefixing their names.
  void merge(const VerificationReport& other, const std::string& prefix);
  std::size_t failures() const;
};

// ------------------------------------------------------------- strong residual

struct ResidualOptions {
  std::size_t samples = 10'000;
  double threshold = 1e-8;
  /// Samples closer than this to an axis are re-drawn.
  double axis_tube = 1e-9;
  int threads = 0;
};

/// |L u - f| / (1 + |f|) at points drawn per open quadrant of the instance,
/// log-uniform in radius on (1/(2n), 4) and uniform in angle.
VerificationReport residual_suite(const CounterexampleInstance& instance, std::uint64_t seed,
                                  const ResidualOptions& options = {});

// ------------------------------------------------------------- interfaces

/// Jumps of u and of a w' across the four axes at r in {0.1, 1, 5}, and the
/// angular equation w'' + nu^2 w = 0 on every branch.
VerificationReport interface_flux_suite(const CounterexampleInstance& instance, double threshold = 1e-12);

// ------------------------------------------------------------- finite differences

/// Polar sampling window for derivative checks.
struct SampleRegion {
  double r_lo = 0.05;
  double r_hi = 3.0;
  double theta_lo = 0.0;
  double theta_hi = 2.0 * kPi;
};

struct DerivativeOptions {
  double h = 1e-5;
  double gradient_threshold = 1e-6;
  double hessian_threshold = 1e-4;
  /// Minimum distance from the field's singular set.
  double clearance = 1e-2;
};

/// Fourth-order central differences (steps h and h/2) of values (gradient) and of exact
/// gradients (Hessian) against the exact jets. Errors are relative to the
/// sup norm of the exact quantity.
VerificationReport derivative_check(const ScalarField& field, std::size_t points, std::uint64_t seed,
                                    const SampleRegion& region = {}, const DerivativeOptions& options = {});

// ------------------------------------------------------------- quadrature oracles

/// Monomials r^s over a sector, the unit disk, |x|^-1 over the unit disk and
/// |x|^-2 over an annulus, each against its closed form.
VerificationReport quadrature_suite(double relative_tol = 1e-10, const QuadratureOptions& options = {});

// ------------------------------------------------------------- integrability

/// Exact fraction with positive denominator in lowest terms.
class Rational {
 public:
  Rational(std::int64_t num = 0, std::int64_t den = 1);  // NOLINT

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// Continued-fraction approximation; nullopt unless within tol of x.
  static std::optional<Rational> approximate(double x, std::int64_t max_den = 1'000'000, double tol = 1e-12);
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend bool operator<(const Rational& a, const Rational& b);

 private:
  std::int64_t num_;
  std::int64_t den_;
};

enum class Integrability { finite, infinite };
const char* to_string(Integrability c);

/// Integral of r^(p alpha + 1) over (0, 1): finite iff p alpha + 2 > 0.
/// Throws ParameterError unless p > 1.
Integrability integrability_threshold(const Rational& alpha, const Rational& p);

struct NumericIntegrability {
  Integrability classification = Integrability::finite;
  std::vector<double> eps;
  /// Integral over [eps_k, 1].
  std::vector<double> partial;
  /// Integral over [eps_{k+1}, eps_k].
  std::vector<double> increments;
};

/// Partial integrals for eps in {1e-2, ..., 1e-8}: finite when the decade
/// increments shrink, infinite when they do not.
NumericIntegrability integrability_numeric(double alpha, double p, const QuadratureOptions& options = {});

/// Hessian exponent of the corner harmonic for exponent pi/omega = (2p-2)/p.
Rational corner_hessian_exponent(const Rational& p);
/// Du of the piecewise-polar profile is in L_p(B_1) iff p < 2 / (1 - nu).
/// Throws ParameterError when nu >= 1 (no threshold).
Rational ps_gradient_threshold(const Rational& nu);

}  // namespace cx
