// Serial reference kernels against the OpenMP ones.
// Run with --benchmark_filter=... ; thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "diff4/construct.hpp"
#include "diff4/spectra.hpp"

using namespace diff4;

namespace {

VFunc subject(int n) { return build_G(random_V(Field::builtin(n), compute_VM(*Field::builtin(n)).size() / 2, 1)); }

void BM_DiffSerial(benchmark::State &state) {
  VFunc g = subject(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::differential_spectrum(g));
}

void BM_DiffParallel(benchmark::State &state) {
  VFunc g = subject(static_cast<int>(state.range(0)));
  set_workers(0);
  for (auto _ : state) benchmark::DoNotOptimize(differential_spectrum(g));
  state.counters["workers"] = workers();
}

void BM_WalshSerial(benchmark::State &state) {
  VFunc g = subject(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::walsh_profile(g));
}

void BM_WalshParallel(benchmark::State &state) {
  VFunc g = subject(static_cast<int>(state.range(0)));
  set_workers(0);
  for (auto _ : state) benchmark::DoNotOptimize(walsh_profile(g));
  state.counters["workers"] = workers();
}

} // namespace

BENCHMARK(BM_DiffSerial)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiffParallel)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WalshSerial)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WalshParallel)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
