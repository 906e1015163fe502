#pragma once

// Command-line driver. Every command writes a JSON report (stdout unless
// --json is given) and, with --csv, a table. Exit codes: 0 pass, 1 failed
// certification, 2 usage or parameter error.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cx/construct.hpp"
#include "cx/verify.hpp"

namespace cx::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode { kPass = 0, kFail = 1, kUsage = 2 };

struct RunConfig {
  std::string command;
  double p = 4.0;
  double q = 4.0;
  int n = 16;
  std::vector<int> n_list{16, 64, 256, 1024, 4096};
  std::string stage = "full";
  double theta0 = 0.0;
  /// Exponent for the ps integrability classification; 0 when not requested.
  double ps_p = 0.0;
  double R = 1.0;
  double tol = 1e-8;
  std::uint64_t seed = 42;
  std::size_t samples = 10'000;
  std::size_t bumps = 20;
  std::size_t points = 100;
  std::string suite = "all";
  double min_r_squared = 0.999;
  double max_increment_spread = 0.03;
  std::string json_path;
  std::string csv_path;
  bool certify = true;

  /// Throws ParameterError.
  void validate() const;
  nlohmann::ordered_json to_json() const;
};

nlohmann::ordered_json to_json(const VerificationReport& report);
nlohmann::ordered_json to_json(const BlowupReport& report);
nlohmann::ordered_json to_json(const QuadrantCoefficients& coeffs);

/// Full-precision decimal, shortest form that round-trips.
std::string format_double(double v);

/// Runs one command. argv[0] is the program name.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace cx::cli
