// Serial reference vs OpenMP replicate loops. Outputs are identical (see the
// unit tests); only wall time differs.

#include <vector>

#include <benchmark/benchmark.h>

#include "pf/degrees.hpp"
#include "pf/kernels.hpp"

namespace {

const std::vector<double> kTimes{0.25, 0.5, 0.75};

void BM_ForestWalk(benchmark::State& state, pf::Execution exec) {
  const auto s = pf::binary_family_for_lambda(state.range(0), 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pf::forest_walk_marginals(s, kTimes, 1, 1, 256, exec));
  }
  state.SetItemsProcessed(state.iterations() * 256);
}

void BM_FirstPassageBridge(benchmark::State& state, pf::Execution exec) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(pf::fp_bridge_marginals(1.0, state.range(0), kTimes, 1, 2, 256, exec));
  }
  state.SetItemsProcessed(state.iterations() * 256);
}

}  // namespace

BENCHMARK_CAPTURE(BM_ForestWalk, serial, pf::Execution::Serial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ForestWalk, parallel, pf::Execution::Parallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FirstPassageBridge, serial, pf::Execution::Serial)->Arg(1 << 12)->Arg(1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FirstPassageBridge, parallel, pf::Execution::Parallel)->Arg(1 << 12)->Arg(1 << 14)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
