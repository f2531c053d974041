#include <benchmark/benchmark.h>

#include "qswitch/hardware.hpp"
#include "qswitch/lleg.hpp"
#include "qswitch/memswitch.hpp"

using namespace qswitch;

static void BM_ExpectedEmaxExact(benchmark::State& state) {
  const HardwareProfile p = HardwareProfile::baseline();
  const double p_link = block_success_prob(p, 30);
  ConnectivityDistribution dist;
  dist.mem_per_client.assign(static_cast<std::size_t>(state.range(0)), 3);
  dist.link_prob = p_link;
  for (auto _ : state) {
    auto v = expected_emax_exact(dist, 8);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_ExpectedEmaxExact)->Arg(4)->Arg(6)->Arg(8);

static void BM_ExpectedEmaxMc(benchmark::State& state) {
  const HardwareProfile p = HardwareProfile::baseline();
  const auto dist = connectivity_from_profile(p, block_success_prob(p, 30));
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto est = expected_emax_mc(dist, 8, 100'000, kDefaultSeed, workers);
    benchmark::DoNotOptimize(est.mean);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * 100'000);
}
BENCHMARK(BM_ExpectedEmaxMc)->Arg(1)->Arg(2)->Arg(8)->UseRealTime();

static void BM_BlockLinkWerner(benchmark::State& state) {
  const HardwareProfile p = HardwareProfile::baseline();
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto w = block_link_werner(p, k);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_BlockLinkWerner)->Arg(1)->Arg(30)->Arg(1000);

static void BM_OptimizeBlockSize(benchmark::State& state) {
  HardwareProfile p = HardwareProfile::baseline();
  p.link_length = 0.1;
  for (auto _ : state) {
    auto c = optimize_block_size(p, Objective::utility_ngt, {1, 60}, Estimator::exact());
    benchmark::DoNotOptimize(c.k_star);
  }
}
BENCHMARK(BM_OptimizeBlockSize);
