// Serial reference loops against their OpenMP versions. The thread count is
// the benchmark argument; 1 selects the serial path.

#include <random>

#include <benchmark/benchmark.h>

#include "rb/spectral.hpp"
#include "rb/sweep.hpp"

namespace {

void BM_Sweep(benchmark::State& state) {
  rb::SweepOptions opts;
  opts.limits = {3, 6, 3};
  opts.threads = static_cast<int>(state.range(0));
  std::mt19937_64 rng(5);
  for (int n = 4; n <= 6; ++n) opts.sites.push_back(rb::random_sites(3, n, 20, rng));
  int64_t graphs = 0;
  for (auto _ : state) {
    const rb::SweepReport r = rb::run_sweep(opts);
    graphs = r.graphs;
    benchmark::DoNotOptimize(r.failure_count);
  }
  state.counters["graphs"] = static_cast<double>(graphs);
  state.counters["graphs/s"] = benchmark::Counter(static_cast<double>(graphs), benchmark::Counter::kIsIterationInvariantRate);
}

void BM_Elliptic(benchmark::State& state) {
  const auto graphs = rb::enumerate_graphs(3, 4, 2);
  rb::EllipticOptions opts;
  opts.samples = 1024;
  opts.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const rb::EllipticReport r = rb::search_elliptic(graphs, 3, opts);
    benchmark::DoNotOptimize(r.margin);
  }
  state.counters["blocks"] = static_cast<double>(graphs.size());
}

}  // namespace

BENCHMARK(BM_Sweep)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Elliptic)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
