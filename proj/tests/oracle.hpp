#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library: closed forms, direct formulas and a separate Simpson rule.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;
inline constexpr double pi = 3.141592653589793238462643383279502884;

inline C basis(double alpha, int n, C z) {
  const int k = std::abs(n);
  const double norm = std::sqrt(std::pow(alpha, k) / std::tgamma(k + 1.0));
  const C base = n >= 0 ? z : std::conj(z);
  return norm * (k == 0 ? C(1.0) : std::pow(base, k));
}

inline C harmonic_kernel(double alpha, bool basis_sum, C z, C w) {
  const C k = std::exp(alpha * std::conj(z) * w);
  return k + std::conj(k) - (basis_sum ? 1.0 : 0.0);
}

// Composite Simpson on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Integral over the disc |w - center| < radius: Simpson in t, trapezoid in theta.
inline double disc_integral(const std::function<double(C)>& f, C center, double radius, int nr = 400,
                            int nt = 256) {
  double total = 0.0;
  for (int k = 0; k < nt; ++k) {
    const double th = 2.0 * pi * k / nt;
    const C dir(std::cos(th), std::sin(th));
    total += simpson([&](double t) { return t * f(center + t * dir); }, 0.0, radius, nr);
  }
  return total * 2.0 * pi / nt;
}

// 2D composite Simpson on [-R, R]^2.
inline double square_integral(const std::function<double(C)>& f, double R, int n) {
  return simpson([&](double y) { return simpson([&](double x) { return f(C(x, y)); }, -R, R, n); }, -R, R, n);
}

struct Harmonic {
  std::vector<C> f1;
  std::vector<C> f2;  // f2[0] == 0

  C operator()(C z) const {
    C a = 0.0, b = 0.0, p = 1.0;
    for (std::size_t k = 0; k < std::max(f1.size(), f2.size()); ++k) {
      if (k < f1.size()) a += f1[k] * p;
      if (k < f2.size()) b += f2[k] * p;
      p *= z;
    }
    return a + std::conj(b);
  }
};

inline Harmonic random_harmonic(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::normal_distribution<double> g;
  Harmonic h;
  const int d1 = deg(rng);
  const int d2 = deg(rng);
  for (int k = 0; k <= d1; ++k) h.f1.emplace_back(g(rng), g(rng));
  h.f2.push_back(0.0);
  for (int k = 1; k <= d2; ++k) h.f2.emplace_back(g(rng), g(rng));
  return h;
}

// #{(n, m) in Z^2 : |z - (n, m) r| < radius}, scanning a generous box.
inline int lattice_count(C z, double r, double radius) {
  const int reach = static_cast<int>(std::ceil(radius / r)) + 2;
  const int n0 = static_cast<int>(std::round(z.real() / r));
  const int m0 = static_cast<int>(std::round(z.imag() / r));
  int count = 0;
  for (int m = m0 - reach; m <= m0 + reach; ++m) {
    for (int n = n0 - reach; n <= n0 + reach; ++n) {
      if (std::abs(z - C(n * r, m * r)) < radius) ++count;
    }
  }
  return count;
}

// C(p, alpha, r) straight from the disc-mass integral it inverts.
inline double pointwise_constant(double p, double alpha, double r) {
  const double mass = 2.0 * pi * simpson([&](double t) { return t * std::exp(-p * alpha * t * t / 2.0); }, 0.0, r, 2000);
  return 1.0 / mass;
}

}  // namespace oracle
