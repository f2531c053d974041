#include <benchmark/benchmark.h>

#include "qswitch/hardware.hpp"
#include "qswitch/memswitch.hpp"
#include "qswitch/sweep.hpp"

using namespace qswitch;

static void BM_SweepRateKL(benchmark::State& state) {
  const HardwareProfile p = HardwareProfile::baseline();
  const Axis k_axis = make_block_axis({1, 60});
  const Axis l_axis = make_log_axis("l", "km", 0.01, 20.0, 25);
  Estimator est = Estimator::exact();
  est.workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto sw = sweep_rate_K_L(p, k_axis, l_axis, est);
    benchmark::DoNotOptimize(sw.values.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * 60 * 25);
}
BENCHMARK(BM_SweepRateKL)->Arg(1)->Arg(2)->Arg(8)->UseRealTime()
    ->Unit(benchmark::kMillisecond);

static void BM_FrontierVsBeta(benchmark::State& state) {
  const HardwareProfile p = HardwareProfile::baseline();
  const Axis beta_axis = make_range_axis("beta", "", 0.005, 0.15, 0.005);
  Estimator est = Estimator::exact();
  est.workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto fr = frontier_vs_beta(p, beta_axis, {1, 60}, est);
    benchmark::DoNotOptimize(fr.beta.data());
  }
}
BENCHMARK(BM_FrontierVsBeta)->Arg(1)->Arg(8)->UseRealTime()
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
