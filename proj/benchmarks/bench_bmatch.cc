#include <benchmark/benchmark.h>

#include <vector>

#include "qswitch/bmatch.hpp"
#include "qswitch/rng.hpp"

using namespace qswitch;

namespace {

CapacityVector instance(int nodes, int cap, std::int64_t budget) {
  return {std::vector<int>(nodes, cap), budget};
}

}  // namespace

static void BM_EmaxClosedForm(benchmark::State& state) {
  const CapacityVector cv = instance(static_cast<int>(state.range(0)), 3, 8);
  for (auto _ : state) {
    auto v = emax_closed_form(cv);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_EmaxClosedForm)->Arg(6)->Arg(14)->Arg(64);

static void BM_GreedyAllocation(benchmark::State& state) {
  const CapacityVector cv = instance(static_cast<int>(state.range(0)), 3, 1000);
  for (auto _ : state) {
    auto a = greedy_max_allocation(cv);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_GreedyAllocation)->Arg(6)->Arg(14)->Arg(64);

static void BM_BruteForceMax(benchmark::State& state) {
  const CapacityVector cv = instance(static_cast<int>(state.range(0)), 3, 8);
  for (auto _ : state) {
    auto r = brute_force_max(cv);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_BruteForceMax)->Arg(4)->Arg(6)->Arg(8);

static void BM_MaxWeightAllocation(benchmark::State& state) {
  const int nodes = static_cast<int>(state.range(0));
  const CapacityVector cv = instance(nodes, 3, 8);
  SplitMix64 rng(7);
  std::vector<double> weights(static_cast<std::size_t>(nodes) * (nodes - 1) / 2);
  for (auto& w : weights) w = rng.next_double();
  for (auto _ : state) {
    auto r = max_weight_allocation(cv, weights);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_MaxWeightAllocation)->Arg(4)->Arg(6)->Arg(8);
