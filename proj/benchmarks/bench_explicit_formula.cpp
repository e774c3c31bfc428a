#include <benchmark/benchmark.h>

#include "turanlab/explicit_formula.hpp"

namespace {

void BM_OscillatingSum(benchmark::State& state) {
  const auto N1 = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(turanlab::oscillating_block_sum(N1, 2 * N1, 50.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OscillatingSum)->RangeMultiplier(10)->Range(3'000, 3'000'000)->Unit(benchmark::kMicrosecond);

void BM_TailF(benchmark::State& state) {
  const auto table = turanlab::LambdaTable::sieve(100'000);
  for (auto _ : state) benchmark::DoNotOptimize(turanlab::tail_F(5000.5, turanlab::ComplexPoint(2.0, 40.0), table));
}
BENCHMARK(BM_TailF)->Unit(benchmark::kMicrosecond);

void BM_PrimeSide(benchmark::State& state) {
  const auto table = turanlab::LambdaTable::sieve(1'000'000);
  turanlab::WeightedSumSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(turanlab::prime_side(spec, table));
}
BENCHMARK(BM_PrimeSide)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
