#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hfock/kernel.hpp"
#include "hfock/quadrature.hpp"

namespace hfock::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kViolated = 1,
  kInputError = 2,
  kNumericError = 3,
  kInconclusive = 4,
};

/// Effective settings of one run. Defaults:
///   alpha 1, convention basis, r 1, extent 0 (automatic), p 2,
///   trunc empty (per command: operator 10, reports 10,20,40),
///   window 0 (automatic), quadrature from QuadratureSpec::defaults, out ".".
struct RunConfig {
  double alpha = 1.0;
  Convention convention = Convention::BasisSum;
  double r = 1.0;
  int extent = 0;
  double p = 2.0;
  std::vector<int> trunc;
  double window = 0.0;
  std::optional<double> quad_radius;
  std::optional<double> quad_step;
  Scheme quad_scheme = Scheme::Midpoint;
  std::filesystem::path out = ".";

  void validate() const;
  FockConfig fock() const { return {alpha, convention}; }
  /// Quadrature for a measure of the given extent, overrides applied.
  QuadratureSpec quadrature(double measure_extent) const;
};

/// Settings given explicitly; unset fields fall through to the next layer.
struct Overrides {
  std::optional<double> alpha;
  std::optional<std::string> convention;
  std::optional<double> r;
  std::optional<int> extent;
  std::optional<std::string> p;
  std::optional<std::string> trunc;
  std::optional<double> window;
  std::optional<double> quad_radius;
  std::optional<double> quad_step;
  std::optional<std::string> quad_scheme;
  std::optional<std::string> out;
};

/// Reads the JSON config file; keys match the long flag names with '-' as '_'.
Overrides load_config_file(const std::filesystem::path& path);

/// flags > config file > defaults.
RunConfig resolve(const Overrides& flags, const Overrides& file);

std::vector<int> parse_trunc(const std::string& text);
double parse_p(const std::string& text);
Convention parse_convention(const std::string& text);
Scheme parse_scheme(const std::string& text);

/// Runs the command line and returns the exit code. Diagnostics go to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hfock::cli
