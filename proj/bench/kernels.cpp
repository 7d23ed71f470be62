// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "rgg/inputs.hpp"
#include "rgg/montecarlo.hpp"
#include "rgg/plimit.hpp"
#include "rgg/reference.hpp"
#include "rgg/transform.hpp"

using namespace rgg;

namespace {

void BM_scatter_serial(benchmark::State& state) {
  const Pmf in = poisson_pmf(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::scatter_pmf_serial(in, 200));
}

void BM_scatter_parallel(benchmark::State& state) {
  const Pmf in = poisson_pmf(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scatter_pmf(in, 200));
}

void BM_limit_serial(benchmark::State& state) {
  const auto N = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::fock_pn_limit_exact_serial(N, 1000));
}

void BM_limit_parallel(benchmark::State& state) {
  const auto N = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fock_pn_limit_exact(N, 1000));
}

void BM_mc_serial(benchmark::State& state) {
  const MCConfig cfg{Coherent{8.0}, 8, static_cast<std::uint64_t>(state.range(0)), 1};
  for (auto _ : state) benchmark::DoNotOptimize(reference::run_mc_serial(cfg));
}

void BM_mc_parallel(benchmark::State& state) {
  const MCConfig cfg{Coherent{8.0}, 8, static_cast<std::uint64_t>(state.range(0)), 1};
  for (auto _ : state) benchmark::DoNotOptimize(run_mc(cfg));
}

}  // namespace

BENCHMARK(BM_scatter_serial)->Arg(100)->Arg(1000);
BENCHMARK(BM_scatter_parallel)->Arg(100)->Arg(1000);
BENCHMARK(BM_limit_serial)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_limit_parallel)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mc_serial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mc_parallel)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
