#include <vector>

#include <benchmark/benchmark.h>

#include "hyperplane/combinatorics.hpp"
#include "hyperplane/kernels.hpp"
#include "hyperplane/levy.hpp"
#include "hyperplane/parallel.hpp"
#include "hyperplane/peeling.hpp"
#include "hyperplane/rng.hpp"
#include "hyperplane/tables.hpp"

using namespace hyperplane;

namespace {

constexpr int kReplicas = 64;

void peel_replica(int k) {
  Stream rng = replica_stream(1, stream_purpose::kPeel, static_cast<uint64_t>(k));
  benchmark::DoNotOptimize(peel_to_radius(LambdaParams::critical(), 20, rng));
}

void BM_PeelSerial(benchmark::State& state) {
  (void)tables_for(LambdaParams::critical(), 1024);
  for (auto _ : state) serial_for_replicas(kReplicas, peel_replica);
}
BENCHMARK(BM_PeelSerial)->Unit(benchmark::kMillisecond);

void BM_PeelParallel(benchmark::State& state) {
  (void)tables_for(LambdaParams::critical(), 1024);
  for (auto _ : state) parallel_for_replicas(kReplicas, static_cast<int>(state.range(0)), peel_replica);
}
BENCHMARK(BM_PeelParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void pv_replica(int k) {
  Stream rng = replica_stream(1, stream_purpose::kLevy, static_cast<uint64_t>(k));
  benchmark::DoNotOptimize(simulate_PV(1.0, 1e-6, 1e-3, rng));
}

void BM_PathsSerial(benchmark::State& state) {
  for (auto _ : state) serial_for_replicas(kReplicas, pv_replica);
}
BENCHMARK(BM_PathsSerial)->Unit(benchmark::kMillisecond);

void BM_PathsParallel(benchmark::State& state) {
  for (auto _ : state) parallel_for_replicas(kReplicas, static_cast<int>(state.range(0)), pv_replica);
}
BENCHMARK(BM_PathsParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

std::vector<uint32_t> band_words(std::size_t n) {
  std::vector<uint32_t> u(n);
  Stream rng(3, 4);
  rng.fill_blocks_u32(u.data(), n / 4);
  return u;
}

void BM_BandKernel(benchmark::State& state) {
  const auto u = band_words(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::stable_band_log_weight(u.data(), u.size(), 1e-4, 1e-3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BandKernel)->Arg(1 << 14)->Arg(1 << 18);

void BM_BandReference(benchmark::State& state) {
  const auto u = band_words(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::stable_band_log_weight_reference(u.data(), u.size(), 1e-4, 1e-3));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BandReference)->Arg(1 << 14)->Arg(1 << 18);

void BM_MartingaleKernel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(martingale_check(1.0, 200, 1e-3, 5, 1));
}
BENCHMARK(BM_MartingaleKernel)->Unit(benchmark::kMillisecond);

void BM_MartingaleReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(martingale_check_reference(1.0, 200, 1e-3, 5));
}
BENCHMARK(BM_MartingaleReference)->Unit(benchmark::kMillisecond);

void BM_Philox(benchmark::State& state) {
  std::vector<uint32_t> out(4 * 4096);
  uint64_t c = 0;
  for (auto _ : state) {
    kernels::philox_blocks(7, 1, c, 4096, out.data());
    c += 4096;
    benchmark::DoNotOptimize(out.data());
  }
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(out.size() * sizeof(uint32_t)));
}
BENCHMARK(BM_Philox);

}  // namespace

BENCHMARK_MAIN();
