#include "hfock/berezin.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <ostream>

#include "hfock/format.hpp"

namespace hfock {

namespace {

constexpr double kNegligibleExponent = 40.0;

}  // namespace

BerezinTransform::BerezinTransform(const FockConfig& cfg, const Measure& mu, const QuadratureSpec& quad)
    : cfg_(cfg), nodes_(mu, quad), reach_(std::sqrt(kNegligibleExponent / cfg.alpha)) {
  cfg_.validate();
}

double BerezinTransform::operator()(Complex z) const {
  detail::CompensatedSum sum;
  auto add = [&](const MeasureNodes::Node& n) { sum.add(n.weight * weighted_kernel_sq(cfg_, z, n.point)); };
  if (nodes_.exact()) {
    for (const auto& n : nodes_.nodes()) add(n);
    return sum.value();
  }
  // The reduced integrand is a sum of Gaussians centred at z (reach D),
  // and for BasisSum also at z/2 (exponent 0.75 alpha |z|^2 + alpha |u - z/2|^2)
  // and 0 (exponent alpha |z|^2 + alpha |u|^2); visit the union of the boxes
  // where each term is not negligible.
  std::array<MeasureNodes::Box, 3> boxes{};
  std::size_t count = 0;
  auto box = [&](Complex c, double reach) {
    boxes[count++] = {c.real() - reach, c.real() + reach, c.imag() - reach, c.imag() + reach};
  };
  box(z, reach_);
  if (cfg_.convention == Convention::BasisSum) {
    const double e = cfg_.alpha * std::norm(z);
    if (0.75 * e < kNegligibleExponent) box(0.5 * z, std::sqrt((kNegligibleExponent - 0.75 * e) / cfg_.alpha));
    if (e < kNegligibleExponent) box(Complex(0.0, 0.0), std::sqrt((kNegligibleExponent - e) / cfg_.alpha));
  }
  nodes_.for_each_in_boxes(std::span<const MeasureNodes::Box>(boxes.data(), count), add);
  return sum.value();
}

double berezin_at(const FockConfig& cfg, const Measure& mu, Complex z, const QuadratureSpec& quad) {
  return BerezinTransform(cfg, mu, quad)(z);
}

Measure symbol_measure(const FockConfig& cfg, const DensityProfile& phi, const QuadratureSpec& quad) {
  cfg.validate();
  quad.validate();
  return Measure::density(scaled(phi, cfg.alpha / kPi), quad.radius);
}

double berezin_symbol_at(const FockConfig& cfg, const DensityProfile& phi, Complex z, const QuadratureSpec& quad) {
  return berezin_at(cfg, symbol_measure(cfg, phi, quad), z, quad);
}

double field_lp_norm(const ScalarField& field, double p) {
  require(p >= 1.0, "L^p norm needs p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : field.samples) m = std::max(m, std::abs(v));
    return m;
  }
  detail::CompensatedSum sum;
  for (double v : field.samples) sum.add(std::pow(std::abs(v), p));
  return std::pow(sum.value() * field.grid.cell_area(), 1.0 / p);
}

bool decays(std::span<const RadialSample> profile, double threshold) {
  if (profile.empty()) return true;
  double peak = 0.0;
  for (const auto& s : profile) peak = std::max(peak, s.max);
  if (peak == 0.0) return true;
  return profile.back().max < threshold * peak;
}

void write_field_csv(std::ostream& out, const ScalarField& field) {
  out << "x,y,value\n";
  for (int j = 0; j < field.grid.ny; ++j) {
    for (int i = 0; i < field.grid.nx; ++i) {
      const Complex z = field.grid.point(i, j);
      out << format_real(z.real()) << ',' << format_real(z.imag()) << ',' << format_real(field.at(i, j)) << '\n';
    }
  }
}

}  // namespace hfock
