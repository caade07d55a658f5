#pragma once

#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hfock/grid.hpp"
#include "hfock/quadrature.hpp"
#include "hfock/types.hpp"

namespace hfock {

/// Square lattice r*Z^2 cut to the window |n|, |m| <= extent.
struct LatticeSpec {
  double spacing = 1.0;
  int extent = 0;

  void validate() const;
  std::size_t size() const {
    const auto side = static_cast<std::size_t>(2 * extent + 1);
    return side * side;
  }
};

double cell_area(const LatticeSpec& spec);

/// All lattice points n*r + i*m*r, m outer and n inner, both ascending.
std::vector<Complex> lattice_points(const LatticeSpec& spec);

/// Lattice coordinates (n, m) of the half-open cell S_r + a containing z,
/// where S_r = [-r/2, r/2) x [-r/2, r/2). Not limited to the window.
std::pair<long, long> cell_index(const LatticeSpec& spec, Complex z);

namespace density {

struct Constant {
  double value = 0.0;
};

/// amplitude * exp(-|z - center|^2 / width^2)
struct GaussianBump {
  double amplitude = 1.0;
  Complex center{0.0, 0.0};
  double width = 1.0;
};

/// height on the open disc |z - center| < radius, zero elsewhere.
struct DiskIndicator {
  Complex center{0.0, 0.0};
  double radius = 1.0;
  double height = 1.0;
};

/// height on inner_radius <= |z - center| < outer_radius.
struct Annulus {
  Complex center{0.0, 0.0};
  double inner_radius = 0.5;
  double outer_radius = 1.0;
  double height = 1.0;
};

/// sum_k coefficients[k] * |z|^(2k) * exp(-decay * |z|^2)
struct RadialPolyGaussian {
  std::vector<double> coefficients{1.0};
  double decay = 1.0;
};

}  // namespace density

using DensityProfile = std::variant<density::Constant, density::GaussianBump,
                                    density::DiskIndicator, density::Annulus,
                                    density::RadialPolyGaussian>;

void validate(const DensityProfile& profile);
double evaluate(const DensityProfile& profile, Complex z);
/// Least upper bound of the profile over the plane.
double supremum(const DensityProfile& profile);
DensityProfile scaled(const DensityProfile& profile, double factor);
/// Circles across which the profile jumps.
std::vector<Circle> discontinuities(const DensityProfile& profile);
std::string describe(const DensityProfile& profile);

struct Atom {
  Complex location;
  double weight;
};

/// Positive Borel measure on C: finitely many atoms, or a density profile
/// truncated to the disc |z| < support_radius. Immutable.
class Measure {
 public:
  struct Atomic {
    std::vector<Atom> atoms;
  };
  struct Density {
    DensityProfile profile;
    double support_radius;
  };

  /// Drops zero-weight atoms; rejects negative or non-finite weights.
  static Measure atomic(std::vector<Atom> atoms);
  /// One atom per lattice point, weights row-major as in lattice_points().
  static Measure lattice_weighted(const LatticeSpec& lattice, std::span<const double> weights);
  static Measure density(DensityProfile profile, double support_radius);

  const Atomic* as_atomic() const { return std::get_if<Atomic>(&rep_); }
  const Density* as_density() const { return std::get_if<Density>(&rep_); }

  /// c * mu for c >= 0.
  Measure scaled(double factor) const;

  /// Radius of the smallest origin-centred disc holding the support.
  double extent() const;

  const std::string& description() const { return description_; }

 private:
  Measure(std::variant<Atomic, Density> rep, std::string description)
      : rep_(std::move(rep)), description_(std::move(description)) {}

  std::variant<Atomic, Density> rep_;
  std::string description_;
};

/// Union of two atomic measures.
Measure combine(const Measure& a, const Measure& b);

/// mu(B(center, radius)) for the open disc.
double ball_mass(const Measure& mu, Complex center, double radius);
/// Same, with an explicit polar rule for density measures.
double ball_mass(const Measure& mu, Complex center, double radius, const PolarRule& rule);

/// Normalised ball mass mu(B(center, radius)) / (pi radius^2).
double avg_function(const Measure& mu, Complex center, double radius);

struct MassResult {
  double value;
  /// Set when the density does not vanish at the truncation circle, i.e.
  /// the reported value is a truncation of a larger (possibly infinite) mass.
  bool truncated;
};

MassResult total_mass(const Measure& mu);

/// Integral of profile^power over the disc |z| < radius against dA.
double integrate_power(const DensityProfile& profile, double power, double radius);

/// Maximum over the probe points of #{a : |z - a| < factor * r}.
int covering_multiplicity(const LatticeSpec& spec, double factor, const GridSpec& probe);

}  // namespace hfock
