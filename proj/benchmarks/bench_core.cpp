#include <benchmark/benchmark.h>

#include <numbers>

#include "telerev/instrument.hpp"
#include "telerev/montecarlo.hpp"
#include "telerev/theorems.hpp"

using namespace telerev;

namespace {

CMatrix random_matrix(std::size_t n, Rng& rng) {
  CMatrix m(n, n);
  for (auto& z : m.entries()) z = Complex(rng.normal(), rng.normal());
  return m;
}

void BM_Svd2x2(benchmark::State& state) {
  Rng rng({1, 0});
  const CMatrix m = random_matrix(2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(svd(m));
}
BENCHMARK(BM_Svd2x2);

void BM_SvdJacobi(benchmark::State& state) {
  Rng rng({2, 0});
  const CMatrix m = random_matrix(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(detail::svd_jacobi(m));
}
BENCHMARK(BM_SvdJacobi)->Arg(2)->Arg(3)->Arg(4)->Arg(8);

void BM_InstrumentAndReversal(benchmark::State& state) {
  const auto channel = ejm_channel(0.7);
  const auto jm = ejm(0.3);
  for (auto _ : state) {
    const auto inst = build_instrument(channel, jm);
    benchmark::DoNotOptimize(optimal_reversal(inst));
  }
}
BENCHMARK(BM_InstrumentAndReversal);

void BM_QuditBounds(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const std::vector<double> e(d * d, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(thm2_bounds(d, e));
}
BENCHMARK(BM_QuditBounds)->Arg(3)->Arg(4);

void BM_MonteCarloPerformance(benchmark::State& state) {
  const auto inst = build_instrument(max_entangled(2), ejm(0.0));
  const auto plan = optimal_reversal(inst);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto shards = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_performance(inst, plan, n, {7, 0}, shards));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_MonteCarloPerformance)->Args({100000, 1})->Args({100000, 4})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
