#include <benchmark/benchmark.h>

#include "mplab/mp_harness.hpp"

namespace {

void BM_B1MarginalPosterior(benchmark::State& state) {
  const auto joint = mplab::mp::exp_ratio_joint(static_cast<std::size_t>(state.range(0)));
  const mplab::mp::JointPrior flat = [](double, double) { return 1.0; };
  for (auto _ : state) benchmark::DoNotOptimize(mplab::mp::b1_marginal_posterior(joint, flat, 1.0));
}
BENCHMARK(BM_B1MarginalPosterior)->Arg(201)->Arg(401)->Unit(benchmark::kMillisecond);

void BM_StructureCheck(benchmark::State& state) {
  const auto joint = mplab::mp::exp_ratio_joint();
  for (auto _ : state) benchmark::DoNotOptimize(mplab::mp::check_z_depends_only_on_zeta(joint, 1e-6));
}
BENCHMARK(BM_StructureCheck)->Unit(benchmark::kMillisecond);

void BM_CompatibilityResidual(benchmark::State& state) {
  const auto reduced = mplab::mp::exp_ratio_reduced();
  const auto flat = mplab::GriddedDensity::tabulate(reduced.zeta, [](double) { return 1.0; });
  const auto family = mplab::mp::b2_marginal_posterior(reduced, flat);
  for (auto _ : state) benchmark::DoNotOptimize(mplab::mp::bayes_compatibility_residual(family, reduced));
}
BENCHMARK(BM_CompatibilityResidual);

}  // namespace
