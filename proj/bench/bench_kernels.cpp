// Serial reference scans against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include "salem/census_q.hpp"
#include "salem/totally_real.hpp"

namespace {

using salem::Parallelism;

void BM_Deg4Reference(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(salem::reference::enumerate_salem_deg4(st.range(0)));
}
void BM_Deg4Parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(salem::enumerate_salem_deg4(st.range(0)));
}
void BM_Deg4CountReference(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(salem::reference::count_salem_deg4(st.range(0)));
}
void BM_Deg4CountParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(salem::count_salem_deg4(st.range(0)));
}
void BM_SrCountReference(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(salem::reference::count_sr(st.range(0)));
}
void BM_SrCountParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(salem::count_sr(st.range(0)));
}
void BM_SystemReference(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(salem::reference::enumerate_system(5, st.range(0)));
}
void BM_SystemParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(salem::enumerate_system(5, st.range(0)));
}

}  // namespace

BENCHMARK(BM_Deg4Reference)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Deg4Parallel)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Deg4CountReference)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Deg4CountParallel)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SrCountReference)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SrCountParallel)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SystemReference)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SystemParallel)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
