// Serial reference kernels against their OpenMP counterparts.
//   ./bench_kernels --benchmark_counters_tabular=true
// Thread count follows OMP_NUM_THREADS / CASCADELAB_THREADS.

#include <benchmark/benchmark.h>

#include "cascadelab/cli.hpp"
#include "cascadelab/datasets.hpp"
#include "cascadelab/engine.hpp"
#include "cascadelab/oracle.hpp"

using namespace cascadelab;

namespace {

const ContactNetwork& karate() {
  static const ContactNetwork net = load_karate();
  return net;
}

EpidemicParams karate_params() { return EpidemicParams::uniform(karate(), 0.0, 0.0, 0.3); }

// Complete digraph on 4 nodes with every decision free: 4 + 4 + 12 = 20.
const ContactNetwork& k4() {
  static const ContactNetwork net = make_complete(4);
  return net;
}

void BM_MonteCarloSerial(benchmark::State& state) {
  const auto params = karate_params();
  EstimateOptions opts;
  opts.seeding = Seeding::UniformSingle;
  for (auto _ : state) {
    auto t = monte_carlo_serial(Model::Sir, karate(), params, state.range(0), 1, opts);
    benchmark::DoNotOptimize(t.extent.mean);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MonteCarloParallel(benchmark::State& state) {
  const auto params = karate_params();
  EstimateOptions opts;
  opts.seeding = Seeding::UniformSingle;
  for (auto _ : state) {
    auto t = monte_carlo(Model::Sir, karate(), params, state.range(0), 1, opts);
    benchmark::DoNotOptimize(t.extent.mean);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ExactSirSerial(benchmark::State& state) {
  const auto params = EpidemicParams::uniform(k4(), 0.5, 0.5, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(exact_sir_serial(k4(), params).mean_extent);
}

void BM_ExactSirParallel(benchmark::State& state) {
  const auto params = EpidemicParams::uniform(k4(), 0.5, 0.5, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(exact_sir(k4(), params).mean_extent);
}

}  // namespace

BENCHMARK(BM_MonteCarloSerial)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactSirSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactSirParallel)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  cascadelab::cli::apply_thread_cap();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
