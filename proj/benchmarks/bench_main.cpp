#include <benchmark/benchmark.h>

#include "hillmono/cover_group.hpp"
#include "hillmono/hill_integrator.hpp"
#include "hillmono/kepler.hpp"
#include "hillmono/spectral.hpp"
#include "hillmono/synthesis.hpp"

using namespace hillmono;

namespace {

const Potential kTrig = Potential::trig_poly({0.2, {0.3, -0.1}, {0.0, 0.1}});

void BM_Monodromy(benchmark::State& state) {
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(monodromy(kTrig, steps));
  state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_Monodromy)->Arg(1024)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);

void BM_Multiply(benchmark::State& state) {
  const CoverElement g = from_left_iwasawa({7.3, 0.4, 1.5});
  const CoverElement h = from_left_iwasawa({-2.1, 3.0, -0.7});
  for (auto _ : state) benchmark::DoNotOptimize(multiply(g, h));
}
BENCHMARK(BM_Multiply);

void BM_RightIwasawa(benchmark::State& state) {
  const CoverElement g = from_left_iwasawa({7.3, 0.4, 1.5});
  for (auto _ : state) benchmark::DoNotOptimize(to_right_iwasawa(g));
}
BENCHMARK(BM_RightIwasawa);

void BM_KeplerRoundTrip(benchmark::State& state) {
  for (auto _ : state) {
    const Orbit o = orbit_of(curve_of(kTrig, 4096));
    benchmark::DoNotOptimize(potential_of_curve(curve_of_orbit(o, 4096)));
  }
}
BENCHMARK(BM_KeplerRoundTrip)->Unit(benchmark::kMillisecond);

void BM_Synthesize(benchmark::State& state) {
  const CoverElement g = from_right_iwasawa({7.0, 2.0, -1.0});
  const PerturbationCoeffs h{{0.2, -0.1, 0.3, 0.05}};
  for (auto _ : state) {
    const Potential q = psi(g, h);
    benchmark::DoNotOptimize(monodromy(q));
  }
}
BENCHMARK(BM_Synthesize)->Unit(benchmark::kMillisecond);

void BM_NormalizeC(benchmark::State& state) {
  const CubicPoly p1 = base_polynomial(7.0, 2.0, -1.0);
  const Perturbation r(PerturbationCoeffs{{0.2, -0.1, 0.3, 0.05}});
  for (auto _ : state) benchmark::DoNotOptimize(normalize_c(7.0, p1, r));
}
BENCHMARK(BM_NormalizeC)->Unit(benchmark::kMillisecond);

void BM_SpectrumMathieu(benchmark::State& state) {
  const Potential q0 = Potential::trig_poly({0.0, {2.0}, {}});
  SpectrumOptions opt;
  opt.steps = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oscillation_eigenvalues(q0, Potential::constant(1.0), 4, opt));
  }
}
BENCHMARK(BM_SpectrumMathieu)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
