#include <random>

#include "doctest.h"
#include "hfock/kernel.hpp"
#include "oracle.hpp"

using namespace hfock;

namespace {

const FockConfig kBasis{1.0, Convention::BasisSum};
const FockConfig kPaper{1.0, Convention::PaperSum};

}  // namespace

TEST_SUITE("kernel") {

TEST_CASE("kernel values at a glance") {
  CHECK(analytic_kernel(kBasis, 0.0, Complex(3, 4)) == Complex(1, 0));
  CHECK(harmonic_kernel(kPaper, 0.0, 0.0) == Complex(2, 0));
  CHECK(harmonic_kernel(kBasis, 0.0, 0.0) == Complex(1, 0));
  CHECK(harmonic_kernel_diagonal(kPaper, Complex(1, 0)) == doctest::Approx(2.0 * std::exp(1.0)));
  CHECK(harmonic_kernel_diagonal(kBasis, Complex(1, 0)) == doctest::Approx(2.0 * std::exp(1.0) - 1.0));
}

TEST_CASE("harmonic kernel matches the closed form and is real symmetric") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (double alpha : {0.5, 1.0, 2.5}) {
    for (auto conv : {Convention::BasisSum, Convention::PaperSum}) {
      const FockConfig cfg{alpha, conv};
      for (int t = 0; t < 40; ++t) {
        const Complex z(g(rng), g(rng)), w(g(rng), g(rng));
        const Complex h = harmonic_kernel(cfg, z, w);
        const Complex ref = oracle::harmonic_kernel(alpha, conv == Convention::BasisSum, z, w);
        CHECK(std::abs(h - ref) <= 1e-12 * std::abs(ref));
        CHECK(std::abs(h.imag()) <= 1e-12 * std::abs(h));
        CHECK(std::abs(h - harmonic_kernel(cfg, w, z)) <= 1e-12 * std::abs(h));
      }
    }
  }
}

TEST_CASE("normalized kernel has unit value at its centre") {
  for (auto conv : {Convention::BasisSum, Convention::PaperSum}) {
    const FockConfig cfg{1.3, conv};
    for (Complex z : {Complex(0, 0), Complex(0.7, -1.2), Complex(3, 2)}) {
      const double hzz = std::norm(normalized_kernel(cfg, z, z));
      CHECK(hzz == doctest::Approx(harmonic_kernel_diagonal(cfg, z)));
    }
  }
}

TEST_CASE("weighted kernel square against the direct formula") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (auto conv : {Convention::BasisSum, Convention::PaperSum}) {
    const FockConfig cfg{0.8, conv};
    for (int t = 0; t < 50; ++t) {
      const Complex z(g(rng), g(rng)), u(g(rng), g(rng));
      const bool bs = conv == Convention::BasisSum;
      const double num = std::norm(oracle::harmonic_kernel(0.8, bs, z, u));
      const double den = oracle::harmonic_kernel(0.8, bs, z, z).real();
      const double ref = num / den * std::exp(-0.8 * std::norm(u));
      CHECK(weighted_kernel_sq(cfg, z, u) == doctest::Approx(ref).epsilon(1e-11));
    }
  }
}

TEST_CASE("weighted kernel square stays finite far out") {
  const FockConfig cfg{1.0, Convention::BasisSum};
  const Complex z(40, 30);
  const double at_center = weighted_kernel_sq(cfg, z, z);
  CHECK(std::isfinite(at_center));
  // |h_z(z)|^2 e^{-|z|^2} = H_z(z) e^{-|z|^2} -> 2
  CHECK(at_center == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(weighted_kernel_sq(cfg, z, Complex(-40, -30)) < 1e-300);
}

TEST_CASE("norm of the normalized kernel") {
  CHECK(normalized_kernel_norm_sq(kBasis, Complex(1, 1)) == 1.0);
  CHECK(normalized_kernel_norm_sq(kPaper, 0.0) == doctest::Approx(2.0));
  CHECK(normalized_kernel_norm_sq(kPaper, Complex(1, 0)) == doctest::Approx(1.0 + std::exp(-1.0)));
  // direct: (alpha/pi) integral of |h_z|^2 e^{-alpha|u|^2}
  for (auto cfg : {kBasis, kPaper}) {
    const Complex z(0.6, -0.3);
    const double plane = oracle::square_integral([&](Complex u) { return weighted_kernel_sq(cfg, z, u); }, 9.0, 400);
    CHECK(plane / oracle::pi == doctest::Approx(normalized_kernel_norm_sq(cfg, z)).epsilon(1e-8));
  }
}

TEST_CASE("basis functions") {
  for (int n = -6; n <= 6; ++n) {
    const Complex z(0.4, 1.1);
    const Complex ref = oracle::basis(1.7, n, z);
    CHECK(std::abs(basis_function({1.7, Convention::BasisSum}, n, z) - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
  }
  std::vector<Complex> out(9);
  weighted_basis_values(kBasis, 4, Complex(0.5, 0.5), out);
  for (int n = -4; n <= 4; ++n) {
    const Complex ref = oracle::basis(1.0, n, Complex(0.5, 0.5)) * std::exp(-0.25);
    CHECK(std::abs(out[n + 4] - ref) <= 1e-14);
  }
}

TEST_CASE("basis orthonormality by direct quadrature") {
  const double alpha = 1.0;
  for (int m = -3; m <= 3; ++m) {
    for (int n = -3; n <= 3; ++n) {
      const double re = oracle::square_integral(
          [&](Complex u) {
            return (basis_function(kBasis, n, u) * std::conj(basis_function(kBasis, m, u))).real() *
                   std::exp(-alpha * std::norm(u)) * alpha / oracle::pi;
          },
          8.0, 300);
      CHECK(re == doctest::Approx(m == n ? 1.0 : 0.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("partial kernel sums converge to the basis-sum kernel") {
  const Complex z(0.8, -0.4), w(-0.3, 1.1);
  const Complex full = harmonic_kernel(kBasis, z, w);
  CHECK(std::abs(kernel_partial_sum(kBasis, z, w, 60) - full) < 1e-12);
  const Complex u(1.2, 0.5);
  CHECK(partial_kernel_diagonal_weighted(kBasis, u, 80) ==
        doctest::Approx((2.0 * std::exp(std::norm(u)) - 1.0) * std::exp(-std::norm(u))).epsilon(1e-13));
}

TEST_CASE("harmonic polynomials round-trip through the basis") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const oracle::Harmonic h = oracle::random_harmonic(rng, 5);
    const HarmonicPolynomial f(h.f1, h.f2);
    const Complex z(0.3, -0.7);
    CHECK(std::abs(f(z) - h(z)) <= 1e-12 * std::max(1.0, std::abs(h(z))));
    const auto c = f.to_basis(kBasis, 5);
    const HarmonicPolynomial g = HarmonicPolynomial::from_basis(kBasis, c, 5);
    CHECK(std::abs(g(z) - f(z)) <= 1e-12 * std::max(1.0, std::abs(f(z))));
  }
  const HarmonicPolynomial deg3({0.0, 0.0, 0.0, 1.0}, {});
  CHECK(deg3.degree() == 3);
  CHECK_THROWS_AS(deg3.to_basis(kBasis, 2), InvalidArgument);
}

TEST_CASE("pointwise estimate constant") {
  for (double p : {1.0, 2.0, 3.5}) {
    for (double r : {0.3, 1.0, 2.0}) {
      CHECK(pointwise_estimate_constant(p, 1.2, r) ==
            doctest::Approx(oracle::pointwise_constant(p, 1.2, r)).epsilon(1e-9));
    }
  }
}

// Analytic f: |f e^{-a|.|^2/2}|^p is log-subharmonic after the Gaussian
// shift, so the estimate holds. The equality case is f = 1 at a = 0.
TEST_CASE("pointwise estimate on the analytic subfamily") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (int t = 0; t < 200; ++t) {
    oracle::Harmonic h = oracle::random_harmonic(rng, 4);
    h.f2.assign(1, 0.0);
    const HarmonicPolynomial f(h.f1, h.f2);
    const Complex a(g(rng), g(rng));
    for (double p : {1.0, 2.0}) {
      const auto res = pointwise_estimate_check(kBasis, f, a, p, 1.0);
      CHECK(res.lhs <= res.rhs * (1.0 + 1e-8));
      CHECK(res.holds);
    }
  }
  const auto eq = pointwise_estimate_check(kBasis, HarmonicPolynomial({1.0}, {}), 0.0, 2.0, 1.0);
  CHECK(eq.lhs == doctest::Approx(eq.rhs).epsilon(1e-10));
}

TEST_CASE("kernel config validation") {
  CHECK_THROWS_AS(FockConfig({0.0, Convention::BasisSum}).validate(), InvalidArgument);
  CHECK_THROWS_AS(FockConfig({-1.0, Convention::BasisSum}).validate(), InvalidArgument);
  CHECK_THROWS_AS(pointwise_estimate_constant(0.0, 1.0, 1.0), InvalidArgument);
  CHECK(std::string(to_string(Convention::PaperSum)) != to_string(Convention::BasisSum));
}

}  // TEST_SUITE
