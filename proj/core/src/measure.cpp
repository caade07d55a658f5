#include "hfock/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hfock/format.hpp"

namespace hfock {

namespace {

constexpr PolarRule kDiscRule{24, 512};
// Radial panel width for whole-support integrals (total mass, power integrals).
constexpr double kMassPanel = 0.5;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite_point(Complex z, const char* what) {
  require(is_finite(z), std::string(what) + " must be finite");
}

}  // namespace

void LatticeSpec::validate() const {
  require(std::isfinite(spacing) && spacing > 0.0, "lattice spacing r must be positive");
  require(extent >= 0, "lattice extent must be non-negative");
}

double cell_area(const LatticeSpec& spec) {
  spec.validate();
  return spec.spacing * spec.spacing;
}

std::vector<Complex> lattice_points(const LatticeSpec& spec) {
  spec.validate();
  std::vector<Complex> pts;
  pts.reserve(spec.size());
  for (int m = -spec.extent; m <= spec.extent; ++m) {
    for (int n = -spec.extent; n <= spec.extent; ++n) {
      pts.emplace_back(n * spec.spacing, m * spec.spacing);
    }
  }
  return pts;
}

std::pair<long, long> cell_index(const LatticeSpec& spec, Complex z) {
  spec.validate();
  const double r = spec.spacing;
  return {static_cast<long>(std::floor(z.real() / r + 0.5)),
          static_cast<long>(std::floor(z.imag() / r + 0.5))};
}

// ---------------------------------------------------------------------------
// Density profiles

void validate(const DensityProfile& profile) {
  std::visit(Overloaded{
                 [](const density::Constant& d) {
                   require(std::isfinite(d.value) && d.value >= 0.0, "constant density must be >= 0");
                 },
                 [](const density::GaussianBump& d) {
                   require(std::isfinite(d.amplitude) && d.amplitude >= 0.0, "bump amplitude must be >= 0");
                   require(std::isfinite(d.width) && d.width > 0.0, "bump width must be positive");
                   require_finite_point(d.center, "bump center");
                 },
                 [](const density::DiskIndicator& d) {
                   require(std::isfinite(d.radius) && d.radius > 0.0, "disk radius must be positive");
                   require(std::isfinite(d.height) && d.height >= 0.0, "disk height must be >= 0");
                   require_finite_point(d.center, "disk center");
                 },
                 [](const density::Annulus& d) {
                   require(std::isfinite(d.inner_radius) && d.inner_radius >= 0.0,
                           "annulus inner radius must be >= 0");
                   require(std::isfinite(d.outer_radius) && d.outer_radius > d.inner_radius,
                           "annulus needs inner radius < outer radius");
                   require(std::isfinite(d.height) && d.height >= 0.0, "annulus height must be >= 0");
                   require_finite_point(d.center, "annulus center");
                 },
                 [](const density::RadialPolyGaussian& d) {
                   require(!d.coefficients.empty(), "radial profile needs coefficients");
                   for (double c : d.coefficients) {
                     require(std::isfinite(c) && c >= 0.0, "radial coefficients must be >= 0");
                   }
                   require(std::isfinite(d.decay) && d.decay > 0.0, "radial decay must be positive");
                 },
             },
             profile);
}

double evaluate(const DensityProfile& profile, Complex z) {
  return std::visit(
      Overloaded{
          [](const density::Constant& d) { return d.value; },
          [z](const density::GaussianBump& d) {
            return d.amplitude * std::exp(-std::norm(z - d.center) / (d.width * d.width));
          },
          [z](const density::DiskIndicator& d) {
            return std::abs(z - d.center) < d.radius ? d.height : 0.0;
          },
          [z](const density::Annulus& d) {
            const double rho = std::abs(z - d.center);
            return (rho >= d.inner_radius && rho < d.outer_radius) ? d.height : 0.0;
          },
          [z](const density::RadialPolyGaussian& d) {
            const double s = std::norm(z);
            double poly = 0.0;
            for (auto it = d.coefficients.rbegin(); it != d.coefficients.rend(); ++it) poly = poly * s + *it;
            return poly * std::exp(-d.decay * s);
          },
      },
      profile);
}

double supremum(const DensityProfile& profile) {
  return std::visit(Overloaded{
                        [](const density::Constant& d) { return d.value; },
                        [](const density::GaussianBump& d) { return d.amplitude; },
                        [](const density::DiskIndicator& d) { return d.height; },
                        [](const density::Annulus& d) { return d.height; },
                        [](const density::RadialPolyGaussian& d) {
                          // s^k e^{-decay s} peaks at s = k / decay; scan a fine radial grid.
                          const double smax =
                              (static_cast<double>(d.coefficients.size()) + 40.0) / d.decay;
                          double best = 0.0;
                          constexpr int kSteps = 20000;
                          for (int i = 0; i <= kSteps; ++i) {
                            const double s = smax * i / kSteps;
                            double poly = 0.0;
                            for (auto it = d.coefficients.rbegin(); it != d.coefficients.rend(); ++it) {
                              poly = poly * s + *it;
                            }
                            best = std::max(best, poly * std::exp(-d.decay * s));
                          }
                          return best;
                        },
                    },
                    profile);
}

DensityProfile scaled(const DensityProfile& profile, double factor) {
  require(std::isfinite(factor) && factor >= 0.0, "scale factor must be >= 0");
  return std::visit(Overloaded{
                        [factor](density::Constant d) -> DensityProfile {
                          d.value *= factor;
                          return d;
                        },
                        [factor](density::GaussianBump d) -> DensityProfile {
                          d.amplitude *= factor;
                          return d;
                        },
                        [factor](density::DiskIndicator d) -> DensityProfile {
                          d.height *= factor;
                          return d;
                        },
                        [factor](density::Annulus d) -> DensityProfile {
                          d.height *= factor;
                          return d;
                        },
                        [factor](density::RadialPolyGaussian d) -> DensityProfile {
                          for (double& c : d.coefficients) c *= factor;
                          return d;
                        },
                    },
                    profile);
}

std::vector<Circle> discontinuities(const DensityProfile& profile) {
  std::vector<Circle> out;
  if (const auto* d = std::get_if<density::DiskIndicator>(&profile)) {
    out.push_back({d->center, d->radius});
  } else if (const auto* a = std::get_if<density::Annulus>(&profile)) {
    if (a->inner_radius > 0.0) out.push_back({a->center, a->inner_radius});
    out.push_back({a->center, a->outer_radius});
  }
  return out;
}

namespace {

std::string point_text(Complex z) {
  return "(" + format_real(z.real()) + ", " + format_real(z.imag()) + ")";
}

}  // namespace

std::string describe(const DensityProfile& profile) {
  return std::visit(
      Overloaded{
          [](const density::Constant& d) { return "constant(c=" + format_real(d.value) + ")"; },
          [](const density::GaussianBump& d) {
            return "gaussian_bump(amplitude=" + format_real(d.amplitude) + ", center=" + point_text(d.center) +
                   ", width=" + format_real(d.width) + ")";
          },
          [](const density::DiskIndicator& d) {
            return "disk_indicator(center=" + point_text(d.center) + ", radius=" + format_real(d.radius) +
                   ", height=" + format_real(d.height) + ")";
          },
          [](const density::Annulus& d) {
            return "annulus(center=" + point_text(d.center) + ", r_inner=" + format_real(d.inner_radius) +
                   ", r_outer=" + format_real(d.outer_radius) + ", height=" + format_real(d.height) + ")";
          },
          [](const density::RadialPolyGaussian& d) {
            std::string s = "radial_poly_gaussian(coefficients=[";
            for (std::size_t i = 0; i < d.coefficients.size(); ++i) {
              if (i) s += ", ";
              s += format_real(d.coefficients[i]);
            }
            return s + "], decay=" + format_real(d.decay) + ")";
          },
      },
      profile);
}

// ---------------------------------------------------------------------------
// Measure

Measure Measure::atomic(std::vector<Atom> atoms) {
  std::vector<Atom> kept;
  kept.reserve(atoms.size());
  double mass = 0.0;
  for (const Atom& a : atoms) {
    require_finite_point(a.location, "atom location");
    require(std::isfinite(a.weight) && a.weight >= 0.0, "atom weights must be finite and >= 0");
    if (a.weight > 0.0) {
      kept.push_back(a);
      mass += a.weight;
    }
  }
  std::string desc = "atomic(" + std::to_string(kept.size()) + " atoms, mass=" + format_real(mass) + ")";
  return Measure(Atomic{std::move(kept)}, std::move(desc));
}

Measure Measure::lattice_weighted(const LatticeSpec& lattice, std::span<const double> weights) {
  lattice.validate();
  require(weights.size() == lattice.size(), "lattice weights must have (2*extent+1)^2 entries, got " +
                                                std::to_string(weights.size()));
  const auto pts = lattice_points(lattice);
  std::vector<Atom> atoms;
  atoms.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) atoms.push_back({pts[i], weights[i]});
  Measure m = atomic(std::move(atoms));
  m.description_ = "lattice_weighted(r=" + format_real(lattice.spacing) + ", extent=" +
                   std::to_string(lattice.extent) + ") -> " + m.description_;
  return m;
}

Measure Measure::density(DensityProfile profile, double support_radius) {
  validate(profile);
  require(std::isfinite(support_radius) && support_radius > 0.0, "support radius must be positive");
  std::string desc = "density(" + describe(profile) + ", support_radius=" + format_real(support_radius) + ")";
  return Measure(Density{std::move(profile), support_radius}, std::move(desc));
}

Measure Measure::scaled(double factor) const {
  require(std::isfinite(factor) && factor >= 0.0, "measure scale must be >= 0");
  if (const auto* a = as_atomic()) {
    std::vector<Atom> atoms = a->atoms;
    for (Atom& x : atoms) x.weight *= factor;
    Measure m = atomic(std::move(atoms));
    m.description_ = format_real(factor) + " * " + description_;
    return m;
  }
  const auto* d = as_density();
  Measure m = density(hfock::scaled(d->profile, factor), d->support_radius);
  return m;
}

double Measure::extent() const {
  if (const auto* a = as_atomic()) {
    double r = 0.0;
    for (const Atom& x : a->atoms) r = std::max(r, std::abs(x.location));
    return r;
  }
  return as_density()->support_radius;
}

Measure combine(const Measure& a, const Measure& b) {
  const auto* aa = a.as_atomic();
  const auto* ba = b.as_atomic();
  require(aa && ba, "combine: only atomic measures can be combined");
  std::vector<Atom> atoms = aa->atoms;
  atoms.insert(atoms.end(), ba->atoms.begin(), ba->atoms.end());
  return Measure::atomic(std::move(atoms));
}

namespace {

// panel > 0 adds concentric circles every `panel` around the center, so
// long rays get a composite radial rule instead of a single 24-point one.
double density_disc_integral(const Measure::Density& d, Complex center, double radius, double power,
                             const PolarRule& rule = kDiscRule, double panel = 0.0) {
  const double support = d.support_radius;
  if (std::abs(center) - radius >= support) return 0.0;
  std::vector<Circle> breaks = discontinuities(d.profile);
  breaks.push_back({Complex(0.0, 0.0), support});
  if (panel > 0.0) {
    for (double t = panel; t < radius; t += panel) breaks.push_back({center, t});
  }
  return integrate_disc(
      [&](Complex u) {
        if (std::norm(u) >= support * support) return 0.0;
        const double v = evaluate(d.profile, u);
        return power == 1.0 ? v : std::pow(v, power);
      },
      center, radius, rule, breaks);
}

}  // namespace

double ball_mass(const Measure& mu, Complex center, double radius) {
  return ball_mass(mu, center, radius, kDiscRule);
}

double ball_mass(const Measure& mu, Complex center, double radius, const PolarRule& rule) {
  require(std::isfinite(radius) && radius > 0.0, "ball radius must be positive");
  require_finite_point(center, "ball center");
  if (const auto* a = mu.as_atomic()) {
    detail::CompensatedSum sum;
    for (const Atom& x : a->atoms) {
      if (std::abs(x.location - center) < radius) sum.add(x.weight);
    }
    return sum.value();
  }
  return density_disc_integral(*mu.as_density(), center, radius, 1.0, rule);
}

double avg_function(const Measure& mu, Complex center, double radius) {
  return ball_mass(mu, center, radius) / (kPi * radius * radius);
}

MassResult total_mass(const Measure& mu) {
  if (const auto* a = mu.as_atomic()) {
    detail::CompensatedSum sum;
    for (const Atom& x : a->atoms) sum.add(x.weight);
    return {sum.value(), false};
  }
  const auto& d = *mu.as_density();
  const double value = density_disc_integral(d, Complex(0.0, 0.0), d.support_radius, 1.0, kDiscRule, kMassPanel);
  const double peak = supremum(d.profile);
  double edge = 0.0;
  constexpr int kAngles = 256;
  for (int k = 0; k < kAngles; ++k) {
    const double t = 2.0 * kPi * k / kAngles;
    // just inside the open support disc
    const Complex u = std::polar(d.support_radius * (1.0 - 1e-12), t);
    edge = std::max(edge, evaluate(d.profile, u));
  }
  return {value, peak > 0.0 && edge > 1e-14 * peak};
}

double integrate_power(const DensityProfile& profile, double power, double radius) {
  validate(profile);
  require(power > 0.0, "power must be positive");
  return density_disc_integral(Measure::Density{profile, radius}, Complex(0.0, 0.0), radius, power, kDiscRule,
                               kMassPanel);
}

int covering_multiplicity(const LatticeSpec& spec, double factor, const GridSpec& probe) {
  spec.validate();
  probe.validate();
  require(std::isfinite(factor) && factor > 0.0, "covering factor must be positive");
  const double reach = factor * spec.spacing;
  const double safe = (spec.extent + 1) * spec.spacing;
  const auto pts = lattice_points(spec);
  int best = 0;
  for (int j = 0; j < probe.ny; ++j) {
    for (int i = 0; i < probe.nx; ++i) {
      const Complex z = probe.point(i, j);
      require(std::max(std::abs(z.real()), std::abs(z.imag())) + reach <= safe,
              "probe point lies too close to the lattice window edge; increase the extent");
      int count = 0;
      for (const Complex& a : pts) {
        if (std::abs(z - a) < reach) ++count;
      }
      best = std::max(best, count);
    }
  }
  return best;
}

}  // namespace hfock
