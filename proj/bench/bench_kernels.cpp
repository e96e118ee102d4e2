#include <benchmark/benchmark.h>

#include "eisenrest/eisenstein.hpp"
#include "eisenrest/restriction.hpp"
#include "eisenrest/special_fn.hpp"

using namespace eisenrest;

static void BM_KernelOscillatory(benchmark::State& state) {
  const double T = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(special::bessel_k_imag_scaled(T, 0.6 * T));
}
BENCHMARK(BM_KernelOscillatory)->Arg(50)->Arg(200)->Arg(1000);

static void BM_KernelDecaying(benchmark::State& state) {
  const double T = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(special::bessel_k_imag_scaled(T, 1.3 * T));
}
BENCHMARK(BM_KernelDecaying)->Arg(50)->Arg(200)->Arg(1000);

static void BM_FourierColumn(benchmark::State& state) {
  const auto params = eis::EisensteinParams::make(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eis::FourierColumn(1.7, params).eval(0.3));
}
BENCHMARK(BM_FourierColumn)->Arg(20)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

// Serial reference against the OpenMP path; state.range(1) is the worker count.
static void BM_RestrictedIntegral(benchmark::State& state) {
  const auto params = eis::EisensteinParams::make(static_cast<double>(state.range(0)));
  const restr::TestFunction tf(1.0, 3.0, 256);
  const Exec exec{static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(restr::I_psi(0.3, tf, params, exec));
}
BENCHMARK(BM_RestrictedIntegral)
    ->Args({100, 1})
    ->Args({100, 2})
    ->Args({100, 4})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
