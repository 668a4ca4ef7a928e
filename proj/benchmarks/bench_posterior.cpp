#include <benchmark/benchmark.h>

#include <array>

#include "mplab/diagnostics.hpp"
#include "mplab/limit_scenario.hpp"
#include "mplab/model.hpp"

namespace {

constexpr std::array<double, 4> kNs{1.0, 10.0, 100.0, 1000.0};

struct Setup {
  mplab::LimitScenario scenario = mplab::stone_limit_scenario(1.0);
  mplab::LimitGrids grids;

  explicit Setup(std::size_t points) : grids(make(points)) {}

  mplab::LimitGrids make(std::size_t points) const {
    mplab::LimitRunOptions options;
    options.grid_points = points;
    return mplab::make_limit_grids(scenario, kNs, options);
  }
};

void BM_PosteriorField(benchmark::State& state) {
  const Setup s(static_cast<std::size_t>(state.range(0)));
  const auto prior = s.scenario.priors.tabulate(100.0, s.grids.theta);
  for (auto _ : state) benchmark::DoNotOptimize(mplab::posterior_field(s.scenario.model, prior, s.grids.x));
}
BENCHMARK(BM_PosteriorField)->Arg(1001)->Arg(4001)->Unit(benchmark::kMillisecond);

void BM_MarginalDensity(benchmark::State& state) {
  const Setup s(4001);
  const auto prior = s.scenario.priors.normalized(100.0, s.grids.theta);
  for (auto _ : state) benchmark::DoNotOptimize(mplab::marginal_data_density(s.scenario.model, prior, s.grids.x));
}
BENCHMARK(BM_MarginalDensity)->Unit(benchmark::kMillisecond);

void BM_ProbabilityDiagnostic(benchmark::State& state) {
  const Setup s(4001);
  const auto field = mplab::posterior_field(s.scenario.model, s.scenario.priors.tabulate(100.0, s.grids.theta), s.grids.x);
  const auto m = mplab::marginal_data_density(s.scenario.model, s.scenario.priors.normalized(100.0, s.grids.theta), s.grids.x);
  const auto candidate = s.scenario.probability_candidate(s.grids);
  for (auto _ : state) benchmark::DoNotOptimize(mplab::probability_diagnostic(field, candidate, m));
}
BENCHMARK(BM_ProbabilityDiagnostic)->Unit(benchmark::kMillisecond);

void BM_StoneScenario(benchmark::State& state) {
  const auto scenario = mplab::stone_limit_scenario(1.0);
  mplab::LimitRunOptions options;
  options.grid_points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mplab::run_limit_scenario(scenario, kNs, options));
}
BENCHMARK(BM_StoneScenario)->Arg(1001)->Arg(4001)->Unit(benchmark::kMillisecond);

}  // namespace
