#include <benchmark/benchmark.h>

#include "ruinband/cramer.hpp"
#include "ruinband/estimate.hpp"
#include "ruinband/lundberg.hpp"
#include "ruinband/renewal.hpp"
#include "ruinband/simulate.hpp"

namespace {

using ruinband::ModelSpec;

const ModelSpec kClassical = ModelSpec::classical_exp(2.0, 1.0, 1.0);
const ModelSpec kPerturbed = ModelSpec::perturbed_exp(2.0, 1.0, 1.0, 0.5);
const ModelSpec kGamma = ModelSpec::gamma_sub(2.0, 1.0, 1.0);

void bm_solve_adjustment(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ruinband::solve_adjustment(kGamma));
}
BENCHMARK(bm_solve_adjustment);

void bm_cramer_summary(benchmark::State& state) {
  const ModelSpec& m = state.range(0) == 0 ? kPerturbed : kGamma;
  for (auto _ : state) benchmark::DoNotOptimize(ruinband::cramer_summary(m));
}
BENCHMARK(bm_cramer_summary)->Arg(0)->Arg(1);

void bm_solve_psi(benchmark::State& state) {
  const double step = 30.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ruinband::solve_psi(kClassical, 30.0, step));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_solve_psi)->RangeMultiplier(2)->Range(512, 4096)->Complexity(benchmark::oNSquared)
    ->Unit(benchmark::kMillisecond);

void bm_simulate_classical(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ruinband::simulate_classical(kClassical, 5000.0, seed++));
  }
}
BENCHMARK(bm_simulate_classical)->Unit(benchmark::kMicrosecond);

void bm_simulate_gamma_jumps(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ruinband::simulate_gamma_jumps(kGamma, 1000.0, 1e-3, seed++));
  }
}
BENCHMARK(bm_simulate_gamma_jumps)->Unit(benchmark::kMicrosecond);

void bm_mle_exponential(benchmark::State& state) {
  const auto obs = ruinband::simulate_classical(kClassical, 5000.0, 7);
  for (auto _ : state) benchmark::DoNotOptimize(ruinband::mle_exponential(obs));
}
BENCHMARK(bm_mle_exponential);

}  // namespace

BENCHMARK_MAIN();
