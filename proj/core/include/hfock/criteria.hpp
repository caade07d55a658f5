#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hfock/kernel.hpp"
#include "hfock/measure.hpp"
#include "hfock/quadrature.hpp"

namespace hfock {

enum class Verdict { Satisfied, Violated, Inconclusive };

std::string to_string(Verdict v);

/// Window-growth rule: compares a quantity on window W with the same
/// quantity on 1.5W. Relative growth above 20% is a violation, below 5% is
/// stable, anything in between is inconclusive.
Verdict growth_verdict(double at_window, double at_larger_window);

inline constexpr double kGrowthViolated = 0.20;
inline constexpr double kGrowthStable = 0.05;

struct NamedValue {
  std::string name;
  double value;
};

struct Arm {
  std::string id;
  std::string quantity;
  std::vector<NamedValue> values;
  std::string threshold;
  Verdict verdict = Verdict::Inconclusive;
  std::string note;
};

struct Check {
  std::string name;
  double lhs;
  double rhs;
  bool holds;
};

struct Report {
  std::string kind;
  std::string measure;
  /// Effective parameters, echoed in insertion order.
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<Arm> arms;
  std::vector<Check> checks;
  std::vector<NamedValue> ratios;
  Verdict overall = Verdict::Inconclusive;

  const Arm& arm(const std::string& id) const;
};

/// Satisfied if every arm is, violated if some arm is violated and none is
/// satisfied, inconclusive otherwise.
Verdict combine_verdicts(const std::vector<Arm>& arms);

/// Probe geometry shared by the reports. Zero means automatic: the window
/// W is extent + r + 3/sqrt(alpha), pulled back inside the support
/// ((S - r - 3/sqrt(alpha)) / 1.5) when the measure is a truncation, and the
/// step is 0.25/sqrt(alpha).
struct ProbeOptions {
  double window = 0.0;
  double step = 0.0;
};

Report carleson_report(const FockConfig& cfg, const Measure& mu, double r, const QuadratureSpec& quad,
                       const ProbeOptions& probe = {});

/// radii empty means 12 evenly spaced radii from 0 to the probe window.
Report vanishing_report(const FockConfig& cfg, const Measure& mu, double r, std::vector<double> radii,
                        const QuadratureSpec& quad, const ProbeOptions& probe = {});

Report boundedness_report(const FockConfig& cfg, const Measure& mu, const std::vector<int>& n_list,
                          const QuadratureSpec& quad, const ProbeOptions& probe = {});

Report compactness_report(const FockConfig& cfg, const Measure& mu, const std::vector<int>& n_list,
                          double r, std::vector<double> radii, const QuadratureSpec& quad,
                          const ProbeOptions& probe = {});

/// lattice.extent == 0 picks the largest extent inside the probe window.
Report schatten_report(const FockConfig& cfg, const Measure& mu, double p, double r, LatticeSpec lattice,
                       const std::vector<int>& n_list, const QuadratureSpec& quad,
                       const ProbeOptions& probe = {});

Report symbol_schatten_report(const FockConfig& cfg, const DensityProfile& phi, double p, double r,
                              const std::vector<int>& n_list, const QuadratureSpec& quad,
                              const ProbeOptions& probe = {});

/// Stable-key-order JSON document.
std::string to_json(const Report& report);

/// `name,value` rows for one arm.
void write_arm_csv(std::ostream& out, const Arm& arm);

}  // namespace hfock
