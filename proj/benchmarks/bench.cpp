#include <benchmark/benchmark.h>

#include "perconet/percolation.hpp"
#include "perconet/quantum.hpp"
#include "perconet/series.hpp"

using namespace perconet;

static void BM_SampleAndCluster(benchmark::State& state) {
  const GeneralizedNetwork net =
      cep_network(generate_lattice(LatticeKind::square, static_cast<int>(state.range(0)), static_cast<int>(state.range(0))));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_and_cluster(net, 0.5, seed++));
  state.SetItemsProcessed(state.iterations() * net.element_count());
}
BENCHMARK(BM_SampleAndCluster)->Arg(64)->Arg(128);

// One Newman-Ziff sample per iteration.
static void BM_SweepSample(benchmark::State& state) {
  const Strategy strategy = state.range(1) ? Strategy::qep : Strategy::cep;
  const int size = static_cast<int>(state.range(0));
  const GeneralizedNetwork net = build_network(generate_lattice(LatticeKind::triangular, size, size), strategy);
  SweepConfig cfg;
  cfg.p_grid = {0.5};
  cfg.samples = 1;
  cfg.workers = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(newman_ziff_sweep(net, cfg));
    ++cfg.seed;
  }
  state.SetItemsProcessed(state.iterations() * net.element_count());
}
BENCHMARK(BM_SweepSample)->Args({64, 0})->Args({64, 1})->Args({128, 0})->Args({128, 1})->Unit(benchmark::kMillisecond);

static void BM_ThetaSeries(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(series::theta_series(LatticeKind::square, Strategy::qep, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_ThetaSeries)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_StarMeasurement(benchmark::State& state) {
  const quantum::PureState s = quantum::PureState::from_phi1(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(quantum::star_measurement(static_cast<int>(state.range(0)), s));
}
BENCHMARK(BM_StarMeasurement)->DenseRange(2, 6);
BENCHMARK_MAIN();
