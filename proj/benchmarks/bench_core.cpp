#include <benchmark/benchmark.h>

#include "hfock/berezin.hpp"
#include "hfock/operator.hpp"

using namespace hfock;

namespace {

const FockConfig kCfg{1.0, Convention::BasisSum};

Measure bump() { return Measure::density(density::GaussianBump{1.0, 0.0, 1.0}, 6.0); }

}  // namespace

static void BM_BerezinDensity(benchmark::State& state) {
  const Measure mu = bump();
  const BerezinTransform t(kCfg, mu, QuadratureSpec::defaults(1.0, 6.0));
  double z = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(t(Complex(z, 0.5)));
    z = z > 4.0 ? 0.0 : z + 0.1;
  }
}
BENCHMARK(BM_BerezinDensity);

static void BM_BerezinAtoms(benchmark::State& state) {
  std::vector<double> w(static_cast<std::size_t>(13 * 13), 1.0);
  const Measure mu = Measure::lattice_weighted({1.0, 6}, w);
  const BerezinTransform t(kCfg, mu, QuadratureSpec::defaults(1.0, 9.0));
  for (auto _ : state) benchmark::DoNotOptimize(t(Complex(0.3, 0.2)));
}
BENCHMARK(BM_BerezinAtoms);

static void BM_AssembleDensity(benchmark::State& state) {
  const Measure mu = bump();
  const QuadratureSpec q = QuadratureSpec::defaults(1.0, 6.0);
  const MeasureNodes nodes(mu, q);
  const int cut = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_nodes(kCfg, nodes, cut).entries.data());
}
BENCHMARK(BM_AssembleDensity)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_Spectrum(benchmark::State& state) {
  const int cut = static_cast<int>(state.range(0));
  const auto op = assemble(kCfg, bump(), cut, QuadratureSpec::defaults(1.0, 6.0));
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(op).eigenvalues.data());
}
BENCHMARK(BM_Spectrum)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
