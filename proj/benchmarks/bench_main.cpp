#include <benchmark/benchmark.h>

#include "jitnet/allocator.hpp"
#include "jitnet/clock.hpp"
#include "jitnet/csma.hpp"
#include "jitnet/tdma.hpp"

namespace {

using namespace jitnet;

void BM_JitExperiment(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.clock_setting = 2;
  cfg.num_frames = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_experiment(cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_JitExperiment)->Arg(1'000)->Arg(10'000);

void BM_BaselineExperiment(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.mode = TrafficMode::Baseline;
  cfg.clock_setting = 2;
  cfg.num_frames = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_experiment(cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BaselineExperiment)->Arg(10'000);

void BM_FullPacking(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(construct_full_packing(64, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_FullPacking)->Arg(2)->Arg(10);

void BM_SolveAllocation(benchmark::State& state) {
  const AllocationRequest request{10, {2, 2, 2, 2, 2}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_allocation(request));
  }
}
BENCHMARK(BM_SolveAllocation);

void BM_ClockRoundTrip(benchmark::State& state) {
  const VirtualClock clock = clock_for_setting(2);
  Tick t = 0;
  for (auto _ : state) {
    t += 9'600'000;
    benchmark::DoNotOptimize(clock.to_reference(clock.to_local(t)));
  }
}
BENCHMARK(BM_ClockRoundTrip);

void BM_CsmaRun(benchmark::State& state) {
  CsmaConfig cfg;
  cfg.num_packets = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_csma(cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CsmaRun)->Arg(1'000);

}  // namespace

BENCHMARK_MAIN();
