#include <benchmark/benchmark.h>

#include "kmmix/chain.hpp"
#include "kmmix/coupling.hpp"
#include "kmmix/mixing.hpp"

namespace {

kmmix::ChainParams reference_chain() {
  return kmmix::ChainParams::make(1.0 / 11, 9.0 / 11, 1.0 / 11);
}

void BM_TvExact(benchmark::State& state) {
  const auto chain = reference_chain();
  const auto t = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kmmix::tv_exact(chain, t));
}
BENCHMARK(BM_TvExact)->Arg(10)->Arg(60)->Arg(250);

void BM_TvOracle(benchmark::State& state) {
  const auto chain = reference_chain();
  const auto t = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kmmix::tv_oracle(chain, t));
}
BENCHMARK(BM_TvOracle)->Arg(10)->Arg(60)->Arg(250);

void BM_KernelSpectral(benchmark::State& state) {
  const auto chain = reference_chain();
  const auto t = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kmmix::kernel_spectral(chain, t, 6, 9));
}
BENCHMARK(BM_KernelSpectral)->Arg(10)->Arg(60);

void BM_SpectralIntegralContour(benchmark::State& state) {
  const auto chain = reference_chain();
  const auto t = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kmmix::spectral_integral(chain, t, 10, kmmix::IntegralRoute::contour));
  }
}
BENCHMARK(BM_SpectralIntegralContour)->Arg(10)->Arg(60);

void BM_SimulateCoupling(benchmark::State& state) {
  const auto chain = reference_chain();
  const auto replicas = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kmmix::simulate_modified(chain, 100, replicas, 42, 1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(replicas));
}
BENCHMARK(BM_SimulateCoupling)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
