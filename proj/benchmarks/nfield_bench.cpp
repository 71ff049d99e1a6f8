#include <benchmark/benchmark.h>

#include "nfield/analytic1d.hpp"
#include "nfield/dynamics.hpp"
#include "nfield/imaging.hpp"
#include "nfield/stimuli.hpp"

using namespace nfield;

static void BM_Convolve(benchmark::State& state) {
  const GridSpec s(10, static_cast<int>(state.range(0)));
  const Field k = sample_kernel(DoGParams::canonical(), s);
  const Field u = random_smooth_field(s, 1);
  convolve(k, u);  // warm the plan cache
  for (auto _ : state) benchmark::DoNotOptimize(convolve(k, u));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s.size()));
}
BENCHMARK(BM_Convolve)->Arg(128)->Arg(512)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_StationaryRays(benchmark::State& state) {
  const GridSpec s(10, static_cast<int>(state.range(0)));
  const Field I = generate(Stimulus::mackay_rays(0.025, 2.0), s);
  const Model m{1.0, state.range(1) ? ResponseKind::rational() : ResponseKind::linear(), DoGParams::canonical()};
  int iters = 0;
  for (auto _ : state) {
    const auto r = stationary_state(I, m);
    iters = r.report.iterations;
    benchmark::DoNotOptimize(r.state);
  }
  state.counters["picard_iterations"] = iters;
}
BENCHMARK(BM_StationaryRays)->Args({256, 0})->Args({256, 1})->Args({512, 1})->Unit(benchmark::kMillisecond);

static void BM_KSeries(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(analytic::K_series_eval(x));
    x = x < 5 ? x + 0.01 : 0.1;
  }
}
BENCHMARK(BM_KSeries);

static void BM_KQuadrature(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(analytic::K_quadrature_eval(1.3));
}
BENCHMARK(BM_KQuadrature)->Unit(benchmark::kMicrosecond);

static void BM_ZeroTables(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(analytic::locate_zeros(analytic::SeriesKind::K, 20));
}
BENCHMARK(BM_ZeroTables)->Unit(benchmark::kMillisecond);

static void BM_RetinalWarp(benchmark::State& state) {
  const GridSpec s(10, 512);
  const BinaryPattern p = binarize(generate(Stimulus::funnel(), s));
  const WarpOptions o{static_cast<int>(state.range(0)), 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(warp_to_retina(p, o));
}
BENCHMARK(BM_RetinalWarp)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
