#include <benchmark/benchmark.h>

#include "levy/concentration/concentration.hpp"
#include "levy/fluctuation/ladder.hpp"
#include "levy/fluctuation/renewal.hpp"
#include "levy/model/exponent.hpp"
#include "levy/model/presets.hpp"
#include "levy/montecarlo/sampler.hpp"
#include "levy/numerics/laplace.hpp"

using namespace levy;

static void BM_PsiClosedForm(benchmark::State& state) {
  const auto spec = preset("cgmy-zero-mean");
  double xi = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi(spec, xi));
    xi = xi < 1e3 ? xi * 1.01 : 0.1;
  }
}
BENCHMARK(BM_PsiClosedForm);

static void BM_PsiQuadrature(benchmark::State& state) {
  const auto t = preset("cgmy-zero-mean").triplet();
  for (auto _ : state) benchmark::DoNotOptimize(psi_quadrature(t, 3.7));
}
BENCHMARK(BM_PsiQuadrature)->Unit(benchmark::kMicrosecond);

static void BM_ConcentrationH(benchmark::State& state) {
  const ConcentrationProfile conc(preset("closing-example"));
  double r = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(conc.h(r));
    r = r < 100 ? r * 1.01 : 0.01;
  }
}
BENCHMARK(BM_ConcentrationH);

static void BM_KappaTime(benchmark::State& state) {
  const LadderExponent ladder(preset("stable-asym-1.5"));
  for (auto _ : state) benchmark::DoNotOptimize(ladder.kappa_time(37.0));
}
BENCHMARK(BM_KappaTime)->Unit(benchmark::kMicrosecond);

static void BM_KappaSpaceTabulated(benchmark::State& state) {
  const LadderExponent ladder(preset("cgmy-zero-mean"));
  for (auto _ : state) benchmark::DoNotOptimize(ladder.kappa_space(3.7));
}
BENCHMARK(BM_KappaSpaceTabulated)->Unit(benchmark::kMicrosecond);

static void BM_EulerInversionExactPair(benchmark::State& state) {
  const double a = 0.75;
  auto F = [a](std::complex<double> s) { return std::pow(s, -1.0 - a); };
  const auto rule = laplace::euler_rule(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(laplace::euler_invert(F, 2.5, rule));
}
BENCHMARK(BM_EulerInversionExactPair)->Arg(10)->Arg(14);

static void BM_RenewalFunction(benchmark::State& state) {
  const LadderExponent ladder(preset("cgmy-zero-mean"));
  for (auto _ : state) benchmark::DoNotOptimize(renewal_V(ladder));
}
BENCHMARK(BM_RenewalFunction)->Unit(benchmark::kMillisecond)->Iterations(3);

static void BM_StableIncrement(benchmark::State& state) {
  const IncrementSampler sampler(preset("stable-sym-1.5"), 1e-3);
  auto rng = path_rng(1, 0, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.increment(1e-4, rng));
}
BENCHMARK(BM_StableIncrement);

static void BM_CgmyIncrement(benchmark::State& state) {
  const IncrementSampler sampler(preset("cgmy-zero-mean"), 1e-3);
  auto rng = path_rng(1, 0, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.increment(1e-4, rng));
}
BENCHMARK(BM_CgmyIncrement);
BENCHMARK_MAIN();
