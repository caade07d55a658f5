#include "hfock/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "hfock/quadrature.hpp"

namespace hfock {

void FockConfig::validate() const {
  require(std::isfinite(alpha) && alpha > 0.0, "alpha must be positive");
}

const char* to_string(Convention c) { return c == Convention::PaperSum ? "paper" : "basis"; }

namespace {

double convention_shift(const FockConfig& cfg) { return cfg.convention == Convention::BasisSum ? 1.0 : 0.0; }

// log sqrt(alpha^k / k!)
double log_basis_norm(double alpha, int k) { return 0.5 * (k * std::log(alpha) - std::lgamma(k + 1.0)); }

}  // namespace

Complex analytic_kernel(const FockConfig& cfg, Complex z, Complex w) {
  return std::exp(cfg.alpha * std::conj(z) * w);
}

Complex harmonic_kernel(const FockConfig& cfg, Complex z, Complex w) {
  const Complex k = analytic_kernel(cfg, z, w);
  return k + std::conj(k) - convention_shift(cfg);
}

double harmonic_kernel_diagonal(const FockConfig& cfg, Complex z) {
  return 2.0 * std::exp(cfg.alpha * std::norm(z)) - convention_shift(cfg);
}

Complex normalized_kernel(const FockConfig& cfg, Complex z, Complex w) {
  return harmonic_kernel(cfg, z, w) / std::sqrt(harmonic_kernel_diagonal(cfg, z));
}

double weighted_kernel_sq(const FockConfig& cfg, Complex z, Complex u) {
  // H_z(u) = 2 e^A cos(theta) - c with A + i theta = alpha conj(z) u.
  const double a = cfg.alpha;
  const double c = convention_shift(cfg);
  const Complex s = a * std::conj(z) * u;
  const double A = s.real();
  const double cos_t = std::cos(s.imag());
  const double denom = 2.0 - c * std::exp(-a * std::norm(z));
  if (A >= 0.0) {
    const double f = 2.0 * cos_t - c * std::exp(-A);
    return f * f * std::exp(-a * std::norm(u - z)) / denom;
  }
  const double f = 2.0 * std::exp(A) * cos_t - c;
  return f * f * std::exp(-a * (std::norm(u) + std::norm(z))) / denom;
}

double normalized_kernel_norm_sq(const FockConfig& cfg, Complex z) {
  if (cfg.convention == Convention::BasisSum) return 1.0;
  return 1.0 + std::exp(-cfg.alpha * std::norm(z));
}

Complex basis_function(const FockConfig& cfg, int n, Complex z) {
  const int k = std::abs(n);
  if (k == 0) return 1.0;
  if (z == Complex(0.0, 0.0)) return 0.0;
  const double mag = std::exp(log_basis_norm(cfg.alpha, k) + k * std::log(std::abs(z)));
  const double phase = k * std::arg(z);
  return std::polar(mag, n >= 0 ? phase : -phase);
}

void weighted_basis_values(const FockConfig& cfg, int cut, Complex z, std::span<Complex> out) {
  require(cut >= 0, "basis cut must be >= 0");
  require(out.size() == static_cast<std::size_t>(2 * cut + 1), "output span must hold 2*cut+1 values");
  const double r2 = std::norm(z);
  const auto centre = static_cast<std::size_t>(cut);
  if (r2 == 0.0) {
    std::fill(out.begin(), out.end(), Complex(0.0, 0.0));
    out[centre] = 1.0;
    return;
  }
  const double log_r = 0.5 * std::log(r2);
  const double theta = std::arg(z);
  const double gauss = -0.5 * cfg.alpha * r2;
  const double log_a = std::log(cfg.alpha);
  for (int k = 0; k <= cut; ++k) {
    const double mag = std::exp(0.5 * (k * log_a - std::lgamma(k + 1.0)) + k * log_r + gauss);
    const Complex v = std::polar(mag, k * theta);
    out[centre + static_cast<std::size_t>(k)] = v;
    out[centre - static_cast<std::size_t>(k)] = std::conj(v);
  }
}

Complex kernel_partial_sum(const FockConfig& cfg, Complex z, Complex w, int cut) {
  require(cut >= 0, "basis cut must be >= 0");
  // n >= 0: (alpha conj(z) w)^n / n!; n = -k: (alpha z conj(w))^k / k!.
  const Complex x = cfg.alpha * std::conj(z) * w;
  const Complex y = cfg.alpha * z * std::conj(w);
  Complex tx = 1.0;
  Complex ty = 1.0;
  Complex sum = 1.0;
  for (int k = 1; k <= cut; ++k) {
    tx *= x / static_cast<double>(k);
    ty *= y / static_cast<double>(k);
    sum += tx + ty;
  }
  return sum;
}

double partial_kernel_diagonal_weighted(const FockConfig& cfg, Complex u, int cut) {
  require(cut >= 0, "basis cut must be >= 0");
  const double x = cfg.alpha * std::norm(u);
  if (x == 0.0) return 1.0;
  const double lx = std::log(x);
  double sum = std::exp(-x);
  for (int k = 1; k <= cut; ++k) sum += 2.0 * std::exp(k * lx - std::lgamma(k + 1.0) - x);
  return sum;
}

// ---------------------------------------------------------------------------

HarmonicPolynomial::HarmonicPolynomial(std::vector<Complex> f1, std::vector<Complex> f2)
    : analytic(std::move(f1)), conjugate(std::move(f2)) {
  if (analytic.empty()) analytic.push_back(0.0);
  if (!conjugate.empty()) {
    analytic[0] += std::conj(conjugate[0]);
    conjugate[0] = 0.0;
  }
}

Complex HarmonicPolynomial::operator()(Complex z) const {
  Complex p1 = 0.0;
  for (auto it = analytic.rbegin(); it != analytic.rend(); ++it) p1 = p1 * z + *it;
  Complex p2 = 0.0;
  for (auto it = conjugate.rbegin(); it != conjugate.rend(); ++it) p2 = p2 * z + *it;
  return p1 + std::conj(p2);
}

int HarmonicPolynomial::degree() const {
  int d = 0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    if (analytic[i] != Complex(0.0, 0.0)) d = std::max(d, static_cast<int>(i));
  }
  for (std::size_t i = 0; i < conjugate.size(); ++i) {
    if (conjugate[i] != Complex(0.0, 0.0)) d = std::max(d, static_cast<int>(i));
  }
  return d;
}

HarmonicPolynomial HarmonicPolynomial::from_basis(const FockConfig& cfg, std::span<const Complex> coeffs,
                                                  int cut) {
  require(cut >= 0 && coeffs.size() == static_cast<std::size_t>(2 * cut + 1),
          "basis coefficients must hold 2*cut+1 values");
  std::vector<Complex> f1(static_cast<std::size_t>(cut + 1));
  std::vector<Complex> f2(static_cast<std::size_t>(cut + 1));
  for (int k = 0; k <= cut; ++k) {
    const double s = std::exp(log_basis_norm(cfg.alpha, k));
    f1[static_cast<std::size_t>(k)] = coeffs[static_cast<std::size_t>(cut + k)] * s;
    if (k > 0) f2[static_cast<std::size_t>(k)] = std::conj(coeffs[static_cast<std::size_t>(cut - k)]) * s;
  }
  return HarmonicPolynomial(std::move(f1), std::move(f2));
}

std::vector<Complex> HarmonicPolynomial::to_basis(const FockConfig& cfg, int cut) const {
  require(degree() <= cut, "polynomial degree exceeds the basis cut");
  std::vector<Complex> c(static_cast<std::size_t>(2 * cut + 1));
  for (std::size_t k = 0; k < analytic.size() && k <= static_cast<std::size_t>(cut); ++k) {
    c[static_cast<std::size_t>(cut) + k] = analytic[k] / std::exp(log_basis_norm(cfg.alpha, static_cast<int>(k)));
  }
  for (std::size_t k = 1; k < conjugate.size() && k <= static_cast<std::size_t>(cut); ++k) {
    c[static_cast<std::size_t>(cut) - k] =
        std::conj(conjugate[k]) / std::exp(log_basis_norm(cfg.alpha, static_cast<int>(k)));
  }
  return c;
}

// ---------------------------------------------------------------------------

double pointwise_estimate_constant(double p, double alpha, double r) {
  require(std::isfinite(p) && p >= 1.0, "p must be >= 1");
  require(std::isfinite(alpha) && alpha > 0.0, "alpha must be positive");
  require(r > 0.0, "r must be positive");
  if (std::isinf(r)) return p * alpha / (2.0 * kPi);
  return p * alpha / (2.0 * kPi * -std::expm1(-0.5 * p * alpha * r * r));
}

PointwiseEstimate pointwise_estimate_check(const FockConfig& cfg, const HarmonicPolynomial& f, Complex a,
                                           double p, double r) {
  cfg.validate();
  const double C = pointwise_estimate_constant(p, cfg.alpha, r);
  const double half_alpha = 0.5 * cfg.alpha;
  auto weighted = [&](Complex w) { return std::pow(std::abs(f(w)) * std::exp(-half_alpha * std::norm(w)), p); };
  const double lhs = weighted(a);
  const double integral = integrate_disc(weighted, a, r, PolarRule{64, 512});
  const double rhs = C * integral;
  return {lhs, rhs, lhs <= rhs * (1.0 + 1e-9)};
}

}  // namespace hfock
