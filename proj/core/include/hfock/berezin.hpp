#pragma once

#include <cmath>
#include <exception>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hfock/grid.hpp"
#include "hfock/integrate.hpp"
#include "hfock/kernel.hpp"
#include "hfock/measure.hpp"
#include "hfock/quadrature.hpp"

namespace hfock {

/// Scalar function sampled on a grid, row-major (j outer, i inner).
struct ScalarField {
  GridSpec grid;
  std::vector<double> samples;
  std::string description;

  double at(int i, int j) const {
    return samples[static_cast<std::size_t>(j) * static_cast<std::size_t>(grid.nx) + static_cast<std::size_t>(i)];
  }
};

/// z -> mu~(z) = integral of |h_z(u)|^2 e^{-alpha|u|^2} d mu(u).
///
/// The measure is discretised once. For densities only the nodes where the
/// reduced integrand exceeds e^{-40} relative to its scale are visited: a
/// box around z, widened to cover the segment [0, z] while the BasisSum
/// cross terms centred at z/2 and 0 are still visible.
class BerezinTransform {
 public:
  BerezinTransform(const FockConfig& cfg, const Measure& mu, const QuadratureSpec& quad);

  double operator()(Complex z) const;

  const FockConfig& config() const { return cfg_; }

 private:
  FockConfig cfg_;
  MeasureNodes nodes_;
  double reach_;
};

double berezin_at(const FockConfig& cfg, const Measure& mu, Complex z, const QuadratureSpec& quad);

/// The measure (alpha/pi) phi dA truncated to the quadrature radius, so that
/// T_phi = T_mu and phi~ = mu~.
Measure symbol_measure(const FockConfig& cfg, const DensityProfile& phi, const QuadratureSpec& quad);

double berezin_symbol_at(const FockConfig& cfg, const DensityProfile& phi, Complex z, const QuadratureSpec& quad);

template <class F>
ScalarField sample_field(F&& fn, const GridSpec& grid, std::string description) {
  grid.validate();
  ScalarField field{grid, {}, std::move(description)};
  field.samples.reserve(grid.size());
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      double v = 0.0;
      try {
        v = fn(grid.point(i, j));
      } catch (const std::exception& e) {
        throw NumericError("field sample (" + std::to_string(i) + ", " + std::to_string(j) + ") failed: " + e.what());
      }
      if (!std::isfinite(v)) {
        throw NumericError("field sample (" + std::to_string(i) + ", " + std::to_string(j) + ") is not finite");
      }
      field.samples.push_back(v);
    }
  }
  return field;
}

/// (sum samples^p * cell area)^(1/p); max |sample| for p = infinity.
double field_lp_norm(const ScalarField& field, double p);

struct RadialSample {
  double radius;
  double max;
};

/// Max of fn over each circle |z| = radius (a single point at radius 0).
template <class F>
std::vector<RadialSample> radial_decay_profile(F&& fn, std::span<const double> radii, int angles = 64) {
  require(angles >= 64, "radial profiles need at least 64 angles");
  for (std::size_t i = 1; i < radii.size(); ++i) require(radii[i] > radii[i - 1], "radii must be ascending");
  std::vector<RadialSample> out;
  out.reserve(radii.size());
  for (double r : radii) {
    require(r >= 0.0, "radii must be >= 0");
    double best = 0.0;
    const int n = r == 0.0 ? 1 : angles;
    for (int k = 0; k < n; ++k) best = std::max(best, static_cast<double>(fn(std::polar(r, 2.0 * kPi * k / n))));
    out.push_back({r, best});
  }
  return out;
}

/// Finite-window proxy for "tends to 0 at infinity": the value at the largest
/// probed radius is below threshold times the profile maximum.
bool decays(std::span<const RadialSample> profile, double threshold = 1e-3);

/// CSV with header `x,y,value`, rows in grid order.
void write_field_csv(std::ostream& out, const ScalarField& field);

}  // namespace hfock
