#include <sstream>

#include "doctest.h"
#include "hfock/berezin.hpp"
#include "oracle.hpp"

using namespace hfock;

namespace {

const FockConfig kBasis{1.0, Convention::BasisSum};
const FockConfig kPaper{1.0, Convention::PaperSum};

QuadratureSpec coarse(double extent, double step = 0.1) {
  QuadratureSpec q = QuadratureSpec::defaults(1.0, extent);
  q.step = step;
  return q;
}

// |H_z(0)|^2 / H_z(z) for the point mass at the origin.
double delta0_oracle(double alpha, bool basis_sum, Complex z) {
  return std::norm(oracle::harmonic_kernel(alpha, basis_sum, z, 0.0)) /
         oracle::harmonic_kernel(alpha, basis_sum, z, z).real();
}

}  // namespace

TEST_SUITE("berezin") {

TEST_CASE("point mass at the origin") {
  const Measure d0 = Measure::atomic({{0.0, 1.0}});
  const auto q = QuadratureSpec::defaults(1.0);
  CHECK(berezin_at(kBasis, d0, 0.0, q) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(berezin_at(kPaper, d0, 0.0, q) == doctest::Approx(2.0).epsilon(1e-15));
  for (double r : {0.0, 1.0, 2.0}) {
    const double expect = 1.0 / (2.0 * std::exp(r * r) - 1.0);
    CHECK(berezin_at(kBasis, d0, Complex(0.0, r), q) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(expect == doctest::Approx(delta0_oracle(1.0, true, Complex(0.0, r))));
  }
}

TEST_CASE("off-centre atoms against the direct formula") {
  const Measure mu = Measure::atomic({{Complex(0.7, -0.2), 1.5}, {Complex(-1.0, 1.0), 0.5}});
  for (auto cfg : {FockConfig{0.6, Convention::BasisSum}, FockConfig{2.0, Convention::PaperSum}}) {
    const bool bs = cfg.convention == Convention::BasisSum;
    for (Complex z : {Complex(0, 0), Complex(1, 1), Complex(-2, 0.5)}) {
      double ref = 0.0;
      for (const Atom& a : mu.as_atomic()->atoms) {
        ref += a.weight * std::norm(oracle::harmonic_kernel(cfg.alpha, bs, z, a.location)) /
               oracle::harmonic_kernel(cfg.alpha, bs, z, z).real() * std::exp(-cfg.alpha * std::norm(a.location));
      }
      CHECK(berezin_at(cfg, mu, z, QuadratureSpec::defaults(cfg.alpha)) == doctest::Approx(ref).epsilon(1e-12));
    }
  }
}

TEST_CASE("identity measure has unit Berezin transform") {
  const Measure lebesgue = Measure::density(density::Constant{1.0 / oracle::pi}, 12.0);
  const QuadratureSpec q = coarse(12.0);
  const BerezinTransform t(kBasis, lebesgue, q);
  for (Complex z : {Complex(0, 0), Complex(2, -1), Complex(-3.5, 3.5)}) CHECK(t(z) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("symbol transforms") {
  const QuadratureSpec q = coarse(0.0);
  CHECK(berezin_symbol_at(kBasis, density::Constant{1.0}, Complex(0.5, 0.5), q) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(berezin_symbol_at(kBasis, density::Constant{3.0}, Complex(-0.5, 1.0), q) ==
        doctest::Approx(3.0).epsilon(1e-8));
  CHECK(berezin_symbol_at(kPaper, density::Constant{1.0}, 0.0, q) == doctest::Approx(2.0).epsilon(1e-8));

  // Gaussian symbol at the origin: (1/pi) integral of e^{-2|u|^2} = 1/2 under BasisSum
  CHECK(berezin_symbol_at(kBasis, density::GaussianBump{1.0, 0.0, 1.0}, 0.0, q) ==
        doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("density transforms against a direct Simpson oracle") {
  const density::GaussianBump bump{2.0, Complex(0.5, 0.0), 0.8};
  const Measure mu = Measure::density(bump, 6.0);
  const Complex z(0.3, -0.6);
  const double ref = oracle::square_integral(
      [&](Complex u) {
        return evaluate(bump, u) * std::norm(oracle::harmonic_kernel(1.0, true, z, u)) /
               oracle::harmonic_kernel(1.0, true, z, z).real() * std::exp(-std::norm(u));
      },
      6.0, 600);
  CHECK(berezin_at(kBasis, mu, z, QuadratureSpec::defaults(1.0, 6.0)) == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("positivity and linearity") {
  const Measure ann = Measure::density(density::Annulus{0.0, 0.5, 1.5, 2.0}, 2.0);
  const QuadratureSpec q = coarse(2.0);
  for (Complex z : {Complex(0, 0), Complex(1, 0), Complex(4, 4), Complex(15, 0)}) {
    const double v = berezin_at(kBasis, ann, z, q);
    CHECK(v >= 0.0);
    CHECK(berezin_at(kBasis, ann.scaled(2.5), z, q) == doctest::Approx(2.5 * v).epsilon(1e-14));
  }
}

TEST_CASE("Berezin windowing agrees with the full node sum") {
  const Measure bump = Measure::density(density::GaussianBump{1.0, Complex(1.0, 0.0), 2.0}, 7.0);
  const QuadratureSpec q = coarse(7.0, 0.1);
  const MeasureNodes nodes(bump, q);
  const BerezinTransform t(kBasis, bump, q);
  for (Complex z : {Complex(0, 0), Complex(3, 2), Complex(6, -6), Complex(10, 0)}) {
    double full = 0.0;
    for (const auto& n : nodes.nodes()) full += n.weight * weighted_kernel_sq(kBasis, z, n.point);
    CHECK(t(z) == doctest::Approx(full).epsilon(1e-12));
  }
}

TEST_CASE("sampled fields") {
  const auto g = GridSpec::spanning(-1.0, 1.0, 3);
  const ScalarField ones = sample_field([](Complex) { return 1.0; }, g, "one");
  CHECK(ones.samples == std::vector<double>(9, 1.0));

  const Measure d0 = Measure::atomic({{0.0, 1.0}});
  const ScalarField avg = sample_field([&](Complex z) { return avg_function(d0, z, 1.0); },
                                       GridSpec::spanning(-2.0, 2.0, 9), "avg");
  for (int j = 0; j < avg.grid.ny; ++j) {
    for (int i = 0; i < avg.grid.nx; ++i) {
      const double expect = std::abs(avg.grid.point(i, j)) < 1.0 ? 1.0 / oracle::pi : 0.0;
      CHECK(avg.at(i, j) == doctest::Approx(expect));
    }
  }
  CHECK_THROWS_AS(sample_field([](Complex z) { return z.real() > 0.5 ? NAN : 0.0; }, g, "bad"), NumericError);
}

TEST_CASE("Lp norms of fields") {
  const ScalarField ones = sample_field([](Complex) { return 1.0; }, GridSpec::cells(-1.0, 1.0, 1.0), "one");
  CHECK(field_lp_norm(ones, 1.0) == doctest::Approx(4.0));
  CHECK(field_lp_norm(ones, 2.0) == doctest::Approx(2.0));
  CHECK(field_lp_norm(ones, HUGE_VAL) == 1.0);
  const ScalarField zero = sample_field([](Complex) { return 0.0; }, GridSpec::cells(-1.0, 1.0, 0.5), "zero");
  CHECK(field_lp_norm(zero, 3.0) == 0.0);
  CHECK_THROWS_AS(field_lp_norm(ones, 0.5), InvalidArgument);

  // integral of the averaged measure recovers its mass
  const Measure d0 = Measure::atomic({{0.0, 1.0}});
  const ScalarField avg = sample_field([&](Complex z) { return avg_function(d0, z, 1.0); },
                                       GridSpec::cells(-2.0, 2.0, 0.01), "avg");
  CHECK(field_lp_norm(avg, 1.0) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("Fubini mass identity for the averaged measure") {
  const Measure mu = Measure::atomic({{Complex(0.3, 0.2), 1.0}, {Complex(-0.7, 0.1), 2.0}});
  const double r = 1.0;
  const ScalarField avg = sample_field([&](Complex z) { return avg_function(mu, z, r); },
                                       GridSpec::cells(-3.0, 3.0, 0.005), "avg");
  CHECK(field_lp_norm(avg, 1.0) == doctest::Approx(3.0).epsilon(1e-3));
}

TEST_CASE("radial decay profiles") {
  const Measure d0 = Measure::atomic({{0.0, 1.0}});
  const auto q = QuadratureSpec::defaults(1.0);
  const std::vector<double> radii{0.0, 0.5, 1.0, 2.0, 3.0};
  const auto prof = radial_decay_profile([&](Complex z) { return berezin_at(kBasis, d0, z, q); }, radii);
  REQUIRE(prof.size() == radii.size());
  for (std::size_t i = 1; i < prof.size(); ++i) CHECK(prof[i].max < prof[i - 1].max);
  CHECK(decays(prof));

  const auto flat = radial_decay_profile([](Complex) { return 1.0; }, radii);
  CHECK_FALSE(decays(flat));

  const std::vector<double> outside{1.5, 2.0, 4.0};
  for (const auto& s : radial_decay_profile([&](Complex z) { return avg_function(d0, z, 1.0); }, outside)) {
    CHECK(s.max == 0.0);
  }
  const std::vector<double> bad{1.0, 0.5};
  CHECK_THROWS_AS(radial_decay_profile([](Complex) { return 1.0; }, bad), InvalidArgument);
}

// Ball mass is dominated by a multiple of the Berezin transform; the ratio
// is measured, and refining the probe grid must not move it much.
TEST_CASE("ball mass over Berezin ratio is finite and stable") {
  const Measure mu = Measure::atomic({{Complex(0.2, 0.1), 1.0}, {Complex(-0.6, 0.4), 0.5}});
  const auto q = QuadratureSpec::defaults(1.0);
  auto max_ratio = [&](int n) {
    double best = 0.0;
    const GridSpec g = GridSpec::spanning(-2.0, 2.0, n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const Complex z = g.point(i, j);
        best = std::max(best, ball_mass(mu, z, 1.0) / berezin_at(kBasis, mu, z, q));
      }
    }
    return best;
  };
  const double c1 = max_ratio(17), c2 = max_ratio(33);
  CHECK(std::isfinite(c1));
  CHECK(c2 / c1 < 2.0);
  CHECK(c1 / c2 < 2.0);
}

TEST_CASE("field csv format") {
  const ScalarField f = sample_field([](Complex z) { return z.real() + 2.0; }, GridSpec::spanning(0.0, 1.0, 2), "f");
  std::ostringstream os;
  write_field_csv(os, f);
  CHECK(os.str() ==
        "x,y,value\n"
        "0.00000000000e+00,0.00000000000e+00,2.00000000000e+00\n"
        "1.00000000000e+00,0.00000000000e+00,3.00000000000e+00\n"
        "0.00000000000e+00,1.00000000000e+00,2.00000000000e+00\n"
        "1.00000000000e+00,1.00000000000e+00,3.00000000000e+00\n");
}

}  // TEST_SUITE
