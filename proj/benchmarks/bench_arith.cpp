#include <benchmark/benchmark.h>

#include "turanlab/arith.hpp"

namespace {

void BM_Sieve(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(turanlab::LambdaTable::sieve(limit));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sieve)->RangeMultiplier(10)->Range(10'000, 10'000'000)->Unit(benchmark::kMillisecond);

void BM_RemainderSweep(benchmark::State& state) {
  const auto table = turanlab::LambdaTable::sieve(10'000'000);
  const auto xs = turanlab::log_spaced(1e3, 1e7, 100);
  for (auto _ : state) {
    benchmark::DoNotOptimize(turanlab::check_remainder_bound(table, [](double) { return 0.5; }, 1.0, xs));
  }
}
BENCHMARK(BM_RemainderSweep)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
