#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "mplab/density.hpp"

namespace {

mplab::GriddedDensity bump(const mplab::Grid1D& g, double mean) {
  return mplab::GriddedDensity::tabulate(g, [mean](double x) { return std::exp(-0.5 * (x - mean) * (x - mean)); });
}

void BM_Normalize(benchmark::State& state) {
  const mplab::Grid1D g(-10.0, 10.0, static_cast<std::size_t>(state.range(0)));
  const auto d = bump(g, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(mplab::normalize(d));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Normalize)->Arg(1001)->Arg(4001)->Arg(16001);

void BM_NormalizeLog(benchmark::State& state) {
  const mplab::Grid1D g(-10.0, 10.0, static_cast<std::size_t>(state.range(0)));
  std::vector<double> logs(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) logs[i] = -500.0 * g[i] * g[i];
  for (auto _ : state) benchmark::DoNotOptimize(mplab::normalize_log(g, logs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NormalizeLog)->Arg(4001);

void BM_L1Dense(benchmark::State& state) {
  const mplab::Grid1D g(-10.0, 10.0, static_cast<std::size_t>(state.range(0)));
  const auto p = mplab::normalize(bump(g, 0.0));
  const auto q = mplab::normalize(bump(g, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(mplab::l1_distance(p, q));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_L1Dense)->Arg(1001)->Arg(4001)->Arg(16001);

void BM_L1Banded(benchmark::State& state) {
  const mplab::Grid1D g(-200.0, 200.0, static_cast<std::size_t>(state.range(0)));
  const auto p = mplab::to_band(mplab::normalize(bump(g, 0.0)));
  const auto q = mplab::to_band(mplab::normalize(bump(g, 1.0)));
  for (auto _ : state) benchmark::DoNotOptimize(mplab::l1_distance(g, p, q));
}
BENCHMARK(BM_L1Banded)->Arg(4001)->Arg(16001);

void BM_QuantileRegion(benchmark::State& state) {
  const mplab::Grid1D g(-10.0, 10.0, 4001);
  const auto m = mplab::normalize(bump(g, 0.0));
  for (auto _ : state) benchmark::DoNotOptimize(mplab::quantile_region(m, 0.95));
}
BENCHMARK(BM_QuantileRegion);

}  // namespace
