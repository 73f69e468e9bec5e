// Serial reference against the OpenMP variant of each scan.  The second
// argument of every benchmark is the thread count (1 = serial path).

#include <benchmark/benchmark.h>

#include <random>

#include "mbanach/axioms.hpp"
#include "mbanach/kernels.hpp"
#include "mbanach/weights.hpp"

using namespace mbanach;

namespace {

EnumCaps bench_caps(int cells) {
  EnumCaps caps;
  caps.max_rows = 4;
  caps.max_cols = 4;
  caps.max_cells = cells;
  caps.samples = 500;
  return caps;
}

Execution configure(const benchmark::State& state) {
  const int threads = static_cast<int>(state.range(1));
  set_thread_count(threads);
  return threads > 1 ? Execution::parallel : Execution::serial;
}

void BM_WeighAll(benchmark::State& state) {
  const Execution ex = configure(state);
  const auto x = min_scalar_set(std::vector<Complex>{1.0, -1.0, Complex(0, 1)});
  const ArrayEnumeration stream(x->size(), bench_caps(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(weigh_all(*x, stream, ex));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(stream.size()));
}

void BM_MaxFirst(benchmark::State& state) {
  const Execution ex = configure(state);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u;
  std::vector<double> values(static_cast<std::size_t>(state.range(0)));
  for (auto& v : values) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(max_first(values, ex));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CheckAxioms(benchmark::State& state) {
  const Execution ex = configure(state);
  const auto x = amax_scalar_set(std::vector<Complex>{1.0, -1.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_axioms(*x, bench_caps(static_cast<int>(state.range(0))), 10000, ex));
  }
}

}  // namespace

BENCHMARK(BM_WeighAll)->ArgsProduct({{6, 9}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MaxFirst)->ArgsProduct({{1 << 16, 1 << 20}, {1, 2, 4}})->UseRealTime();
BENCHMARK(BM_CheckAxioms)->ArgsProduct({{6, 9}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
