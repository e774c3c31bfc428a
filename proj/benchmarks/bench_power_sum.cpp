#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "turanlab/power_sum.hpp"

namespace {

using turanlab::Complex;

std::vector<Complex> random_points(std::size_t L, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mod(0.1, 1.0), arg(0, 2 * M_PI);
  std::vector<Complex> zs{std::polar(1.0, arg(rng))};
  while (zs.size() < L) zs.push_back(std::polar(mod(rng), arg(rng)));
  return zs;
}

void BM_BruteMax(benchmark::State& state) {
  const auto L = static_cast<std::size_t>(state.range(0));
  const turanlab::PowerSumSystem sys(random_points(L, 1), 40.0);
  for (auto _ : state) benchmark::DoNotOptimize(turanlab::brute_max(sys, static_cast<int>(L)));
}
BENCHMARK(BM_BruteMax)->Arg(2)->Arg(10)->Arg(50);

void BM_Cartan(benchmark::State& state) {
  const auto zs = random_points(static_cast<std::size_t>(state.range(0)), 2);
  const double U = 1.0 / (4.0 * M_E * 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(turanlab::cartan_disc_radius(zs, U));
}
BENCHMARK(BM_Cartan)->Arg(2)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Certificate(benchmark::State& state) {
  const turanlab::PowerSumSystem sys(random_points(static_cast<std::size_t>(state.range(0)), 3), 20.5);
  for (auto _ : state) benchmark::DoNotOptimize(turanlab::second_lemma_certificate(sys, 0.5));
}
BENCHMARK(BM_Certificate)->Arg(3)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
