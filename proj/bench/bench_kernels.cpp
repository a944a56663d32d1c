// Serial reference vs OpenMP kernels on a full N = 23 version space, plus the
// ensemble runner. Set OMP_NUM_THREADS to compare thread counts.

#include <benchmark/benchmark.h>

#include <vector>

#include "apal/experiment.hpp"
#include "apal/kernels.hpp"

namespace k = apal::kernels;

namespace {

constexpr unsigned kN = 23;
constexpr k::Code kPattern = 0x5a5a5a;

const std::vector<k::Code>& members() {
  static const std::vector<k::Code> all = [] {
    std::vector<k::Code> v(k::Code{1} << kN);
    for (k::Code c = 0; c < v.size(); ++c) v[c] = c;
    return v;
  }();
  return all;
}

template <auto Fn>
void filter(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(Fn(members(), kPattern, 1, kN));
  state.SetItemsProcessed(state.iterations() * members().size());
}

template <auto Fn>
void count_positive(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(Fn(members(), kPattern, kN));
  state.SetItemsProcessed(state.iterations() * members().size());
}

template <auto Fn>
void plus_counts(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(Fn(members(), kN));
  state.SetItemsProcessed(state.iterations() * members().size());
}

template <auto Fn>
void distance_histogram(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(Fn(members(), kPattern, kN));
  state.SetItemsProcessed(state.iterations() * members().size());
}

template <auto Fn>
void conditional_counts(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(Fn(members(), kPattern, 1, kN));
  state.SetItemsProcessed(state.iterations() * members().size());
}

BENCHMARK(filter<k::serial::filter>)->Name("filter/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(filter<k::omp::filter>)->Name("filter/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(count_positive<k::serial::count_positive>)
    ->Name("count_positive/serial")
    ->Unit(benchmark::kMillisecond);
BENCHMARK(count_positive<k::omp::count_positive>)
    ->Name("count_positive/omp")
    ->Unit(benchmark::kMillisecond);
BENCHMARK(plus_counts<k::serial::plus_counts>)
    ->Name("plus_counts/serial")
    ->Unit(benchmark::kMillisecond);
BENCHMARK(plus_counts<k::omp::plus_counts>)->Name("plus_counts/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(distance_histogram<k::serial::distance_histogram>)
    ->Name("distance_histogram/serial")
    ->Unit(benchmark::kMillisecond);
BENCHMARK(distance_histogram<k::omp::distance_histogram>)
    ->Name("distance_histogram/omp")
    ->Unit(benchmark::kMillisecond);
BENCHMARK(conditional_counts<k::serial::conditional_counts>)
    ->Name("conditional_counts/serial")
    ->Unit(benchmark::kMillisecond);
BENCHMARK(conditional_counts<k::omp::conditional_counts>)
    ->Name("conditional_counts/omp")
    ->Unit(benchmark::kMillisecond);

apal::ExperimentConfig ensemble_config() {
  apal::ExperimentConfig cfg;
  cfg.mode = apal::Mode::passive;
  cfg.n = 99;
  cfg.alpha_max = 4.0;
  cfg.runs = 64;
  return cfg;
}

void ensemble_serial(benchmark::State& state) {
  const auto cfg = ensemble_config();
  for (auto _ : state) benchmark::DoNotOptimize(apal::run_ensemble_serial(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.runs);
}

void ensemble_parallel(benchmark::State& state) {
  const auto cfg = ensemble_config();
  for (auto _ : state) benchmark::DoNotOptimize(apal::run_ensemble(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.runs);
}

BENCHMARK(ensemble_serial)->Name("ensemble/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(ensemble_parallel)->Name("ensemble/omp")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
