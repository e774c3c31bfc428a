#include <benchmark/benchmark.h>

#include "turanlab/zeros.hpp"
#include "turanlab/zeta.hpp"

namespace {

using turanlab::ComplexPoint;

void BM_ZetaDirichlet(benchmark::State& state) {
  const ComplexPoint s(1.0 + 0.1 * static_cast<double>(state.range(0)), 30.0);
  for (auto _ : state) benchmark::DoNotOptimize(turanlab::zeta_dirichlet(s, 1e-8));
}
BENCHMARK(BM_ZetaDirichlet)->Arg(2)->Arg(5)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_ZetaIntegral(benchmark::State& state) {
  const ComplexPoint s(0.5, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(turanlab::zeta_integral(s));
}
BENCHMARK(BM_ZetaIntegral)->Arg(14)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_HardyZ(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(turanlab::hardy_z(t));
}
BENCHMARK(BM_HardyZ)->Arg(20)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_LocateZeros(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(turanlab::locate_zero_signchange(14, 100, 860));
}
BENCHMARK(BM_LocateZeros)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
