#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mplab/diagnostics.hpp"
#include "mplab/grid.hpp"
#include "mplab/model.hpp"

namespace mplab {

struct LimitGrids {
  Grid1D theta;
  Grid1D x;
};

/// Bounds that replace the computed defaults for one axis.
struct Range {
  double lo;
  double hi;
};

/// A one-parameter model with a proper-prior sequence and two candidate
/// limits, evaluated against the pointwise and probability functionals.
struct LimitScenario {
  std::string name;
  std::string description;
  LikelihoodModel model;
  PriorSequence priors;
  std::string pointwise_label;
  std::string probability_label;
  std::function<PosteriorField(const LimitGrids&)> pointwise_candidate;
  std::function<PosteriorField(const LimitGrids&)> probability_candidate;
  /// Data value at which the fixed-x (pointwise) functional is reported.
  double x0 = 0.0;
  /// theta and x bounds covering every density the scenario touches for
  /// the given taper indices.
  std::function<std::pair<Range, Range>(std::span<const double> n_list)> bounds;
  /// x - theta offsets outside which p(x | theta) carries negligible mass;
  /// the likelihood is validated for theta with [theta + lo, theta + hi] inside the x-grid.
  Range likelihood_reach;
};

/// N(theta, 1) data with the taper exp(a theta - theta^2 / 2n); candidates
/// are the closed-form pointwise limit N(x + a, 1) and probability limit N(x, 1).
LimitScenario stone_limit_scenario(double a);

/// Location model with uniform-prior tapers N(0, n); both candidates are the
/// numerically computed formal posterior.
LimitScenario translation_limit_scenario();

/// Gaussian scale model in log coordinates (theta = log sigma, x = log|X|)
/// with tapers N(0, n) on log sigma of the prior d sigma / sigma; both
/// candidates are the formal posterior.
LimitScenario scale_limit_scenario();

struct LimitRow {
  double n;
  double d_pt_x0;      // pointwise functional at x0 vs the pointwise candidate
  double d_prob_pt;    // probability functional vs the pointwise candidate
  double d_prob_prob;  // probability functional vs the probability candidate
  double local_bayes;  // local-Bayes sup vs the probability candidate
};

struct SeriesResult {
  DiagnosticSeries series;
  std::optional<Verdict> verdict;  // empty when the n-list is too short to fit
};

struct LimitRun {
  LimitGrids grids;
  std::vector<LimitRow> rows;
  std::vector<SeriesResult> series;  // D_pt_x0, D_prob_pt, D_prob_prob, local_bayes
};

struct LimitRunOptions {
  double coverage = 0.95;
  std::size_t grid_points = 4001;
  std::optional<Range> theta_range;
  std::optional<Range> x_range;
};

/// Lattice grids per the scenario bounds (or overrides), with x0 forced
/// inside the x range.
LimitGrids make_limit_grids(const LimitScenario& scenario, std::span<const double> n_list,
                            const LimitRunOptions& options);

/// Evaluates every functional at every n. Numerical errors are rethrown with
/// the failing stage prepended to the message.
LimitRun run_limit_scenario(const LimitScenario& scenario, std::span<const double> n_list,
                            const LimitRunOptions& options = {});

}  // namespace mplab
