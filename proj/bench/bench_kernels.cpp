// Serial reference vs OpenMP kernels. Thread count comes from OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include "isingbath/decoherence.hpp"
#include "isingbath/sweep.hpp"

namespace {

using namespace isingbath;

BathParams critical_bath() {
  BathParams p;
  p.n_spins = 1200;
  p.h = 1.0;
  p.epsilon = 0.05;
  p.beta = 2.0;
  return p;
}

void free_trajectory_serial(benchmark::State& state) {
  const auto p = critical_bath();
  const TimeGrid grid(100.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(trajectory_serial(p, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0) * p.n_spins / 2);
}

void free_trajectory_omp(benchmark::State& state) {
  const auto p = critical_bath();
  const TimeGrid grid(100.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(trajectory(p, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0) * p.n_spins / 2);
}

void pulsed_trajectory_serial(benchmark::State& state) {
  const auto p = critical_bath();
  const TimeGrid grid(100.0, static_cast<int>(state.range(0)));
  const auto pulses = PulseConfig::with_period(0.1);
  for (auto _ : state) benchmark::DoNotOptimize(trajectory_serial(p, grid, pulses));
}

void pulsed_trajectory_omp(benchmark::State& state) {
  const auto p = critical_bath();
  const TimeGrid grid(100.0, static_cast<int>(state.range(0)));
  const auto pulses = PulseConfig::with_period(0.1);
  for (auto _ : state) benchmark::DoNotOptimize(trajectory(p, grid, pulses));
}

SweepSpec small_sweep() {
  auto spec = preset("fig2a");
  spec.values = {0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.4};
  for (auto& s : spec.series) {
    s.config.bath.n_spins = 200;
    s.config.grid = {100.0, 2001};
  }
  spec.base.bath.n_spins = 200;
  return spec;
}

void sweep_serial(benchmark::State& state) {
  const auto spec = small_sweep();
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep_serial(spec));
}

void sweep_omp(benchmark::State& state) {
  const auto spec = small_sweep();
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec));
}

}  // namespace

BENCHMARK(free_trajectory_serial)->Arg(2001)->Arg(20001)->Unit(benchmark::kMillisecond);
BENCHMARK(free_trajectory_omp)->Arg(2001)->Arg(20001)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(pulsed_trajectory_serial)->Arg(2001)->Unit(benchmark::kMillisecond);
BENCHMARK(pulsed_trajectory_omp)->Arg(2001)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(sweep_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(sweep_omp)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
