// Serial reference vs OpenMP paths: Monte Carlo sampling and Nystrom assembly.

#include <benchmark/benchmark.h>

#include "perclab/env.hpp"
#include "perclab/fredholm.hpp"

using namespace perclab;

namespace {

void monte_carlo(benchmark::State& state, Execution exec) {
  const LayeredSpec spec(3, {1, 2}, {8, 8});
  for (auto _ : state)
    benchmark::DoNotOptimize(monte_carlo_joint_cdf(spec, {1, 2}, {6.0, 9.0}, 20000, 1, exec).estimate);
}

void assembly(benchmark::State& state, bool parallel) {
  FredholmProblem p;
  p.kernel = make_truncated_unitary_log(2, {1, 2}, {2, 2});
  p.times = {1, 2};
  p.thresholds = {3.0, 5.0};
  p.window = {12.0, 12.0};
  p.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(nystrom_matrix(p, static_cast<int>(state.range(0))).sum());
}

}  // namespace

BENCHMARK_CAPTURE(monte_carlo, serial, Execution::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(monte_carlo, parallel, Execution::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(assembly, serial, false)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(assembly, parallel, true)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
