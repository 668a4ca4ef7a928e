#include "mplab/limit_scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mplab/errors.hpp"
#include "mplab/stone.hpp"

namespace mplab {

namespace {

constexpr double kReach = 8.0;  // standard deviations

std::string n_label(double n) {
  std::ostringstream out;
  out << "n = " << n;
  return out.str();
}

Range hull(const Range& a, const Range& b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

Range around(double center, double sd) { return {center - kReach * sd, center + kReach * sd}; }

PosteriorField uniform_formal_posterior(const LikelihoodModel& model, const LimitGrids& g) {
  const auto flat = GriddedLogDensity::tabulate(g.theta, [](double) { return 0.0; });
  return formal_posterior(model, flat, g.x);
}

// Tapers N(0, n) of a uniform prior on a location parameter: data and
// parameter ranges for a location family whose noise lives in [reach.lo, reach.hi].
std::pair<Range, Range> location_bounds(std::span<const double> n_list, Range reach) {
  std::optional<Range> x;
  std::optional<Range> theta;
  for (double n : n_list) {
    const Range prior = around(0.0, std::sqrt(n));
    const Range data{prior.lo + reach.lo, prior.hi + reach.hi};
    x = x ? hull(*x, data) : data;
    theta = theta ? hull(*theta, prior) : prior;
  }
  const Range posterior{x->lo - reach.hi, x->hi - reach.lo};
  return {hull(*theta, posterior), *x};
}

}  // namespace

LimitScenario stone_limit_scenario(double a) {
  std::ostringstream desc;
  desc << "N(theta, 1) data, taper exp(a theta - theta^2/2n) of the improper prior e^{a theta}, a = " << a;
  return LimitScenario{
      "stone",
      desc.str(),
      LikelihoodModel::gaussian_location(1.0),
      stone_prior_sequence(a),
      "N(x + a, 1)",
      "N(x, 1)",
      [a](const LimitGrids& g) {
        return stone::tabulate_field(g.theta, g.x, [a](double x) { return stone::pointwise_limit(a, x); });
      },
      [](const LimitGrids& g) {
        return stone::tabulate_field(g.theta, g.x, [](double x) { return stone::probability_limit(x); });
      },
      0.0,
      [a](std::span<const double> n_list) {
        std::optional<Range> x;
        for (double n : n_list) {
          const auto m = stone::marginal_exact(stone::StoneConfig(a, n));
          const Range r = around(m.mean, m.sd());
          x = x ? hull(*x, r) : r;
        }
        Range theta = around(x->lo, 1.0);
        for (double n : n_list) {
          const stone::StoneConfig cfg(a, n);
          theta = hull(theta, around(a * n, std::sqrt(n)));
          const auto lo = stone::posterior_exact(cfg, x->lo);
          const auto hi = stone::posterior_exact(cfg, x->hi);
          theta = hull(theta, around(lo.mean, lo.sd()));
          theta = hull(theta, around(hi.mean, hi.sd()));
        }
        theta = hull(theta, around(x->lo + a, 1.0));
        theta = hull(theta, around(x->hi + a, 1.0));
        theta = hull(theta, around(x->hi, 1.0));
        return std::pair{theta, *x};
      },
      Range{-kReach, kReach},
  };
}

LimitScenario translation_limit_scenario() {
  const Range reach{-kReach, kReach};
  const LikelihoodModel model = LikelihoodModel::gaussian_location(1.0);
  return LimitScenario{
      "translation",
      "N(theta, 1) data, uniform prior approximated by N(0, n) tapers",
      model,
      stone_prior_sequence(0.0),
      "formal posterior (uniform prior)",
      "formal posterior (uniform prior)",
      [model](const LimitGrids& g) { return uniform_formal_posterior(model, g); },
      [model](const LimitGrids& g) { return uniform_formal_posterior(model, g); },
      0.0,
      [reach](std::span<const double> n_list) { return location_bounds(n_list, reach); },
      reach,
  };
}

LimitScenario scale_limit_scenario() {
  // log|Z| for Z ~ N(0, 1): left tail ~ e^v, right tail ~ exp(-e^{2v}/2).
  const Range reach{-35.0, 4.0};
  const LikelihoodModel model = LikelihoodModel::log_abs_gaussian_scale();
  return LimitScenario{
      "scale",
      "N(0, sigma^2) data in log coordinates, prior d sigma / sigma approximated by N(0, n) tapers on log sigma",
      model,
      stone_prior_sequence(0.0),
      "formal posterior (prior d sigma / sigma)",
      "formal posterior (prior d sigma / sigma)",
      [model](const LimitGrids& g) { return uniform_formal_posterior(model, g); },
      [model](const LimitGrids& g) { return uniform_formal_posterior(model, g); },
      0.0,
      [reach](std::span<const double> n_list) { return location_bounds(n_list, reach); },
      reach,
  };
}

LimitGrids make_limit_grids(const LimitScenario& scenario, std::span<const double> n_list,
                            const LimitRunOptions& options) {
  if (n_list.empty()) {
    throw ConfigError("n-list must not be empty");
  }
  auto [theta, x] = scenario.bounds(n_list);
  if (options.theta_range) {
    theta = *options.theta_range;
  }
  if (options.x_range) {
    x = *options.x_range;
  }
  x.lo = std::min(x.lo, scenario.x0);
  x.hi = std::max(x.hi, scenario.x0);
  try {
    return LimitGrids{Grid1D::lattice(theta.lo, theta.hi, options.grid_points),
                      Grid1D::lattice(x.lo, x.hi, options.grid_points)};
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid grid: ") + e.what());
  }
}

LimitRun run_limit_scenario(const LimitScenario& scenario, std::span<const double> n_list,
                            const LimitRunOptions& options) {
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (!(n_list[i] > 0.0) || !std::isfinite(n_list[i]) || (i > 0 && !(n_list[i] > n_list[i - 1]))) {
      throw ConfigError("n-list must hold finite positive values in strictly increasing order");
    }
  }
  if (!(options.coverage > 0.0 && options.coverage < 1.0)) {
    throw ConfigError("coverage must lie in (0, 1)");
  }
  const LimitGrids grids = make_limit_grids(scenario, n_list, options);

  std::string stage = "likelihood validation";
  try {
    validate_likelihood(scenario.model, grids.theta, grids.x, grids.x.lo() - scenario.likelihood_reach.lo,
                        grids.x.hi() - scenario.likelihood_reach.hi);

    stage = "pointwise-limit candidate";
    const PosteriorField pointwise = scenario.pointwise_candidate(grids);
    stage = "probability-limit candidate";
    const PosteriorField probability = scenario.probability_candidate(grids);

    LimitRun run{grids, {}, {}};
    DiagnosticSeries s_pt("pointwise: " + scenario.pointwise_label, SeriesKind::pointwise_at_x);
    DiagnosticSeries s_prob_pt("probability: " + scenario.pointwise_label, SeriesKind::probability);
    DiagnosticSeries s_prob_prob("probability: " + scenario.probability_label, SeriesKind::probability);
    DiagnosticSeries s_local("local Bayes: " + scenario.probability_label, SeriesKind::local_bayes);

    for (double n : n_list) {
      stage = n_label(n) + ": posterior field";
      const PosteriorField field = posterior_field(scenario.model, scenario.priors.tabulate(n, grids.theta), grids.x);
      stage = n_label(n) + ": marginal data density";
      const NormalizedDensity m =
          marginal_data_density(scenario.model, scenario.priors.normalized(n, grids.theta), grids.x);
      stage = n_label(n) + ": diagnostics";
      LimitRow row{n,
                   pointwise_diagnostic(field, pointwise, scenario.x0),
                   probability_diagnostic(field, pointwise, m),
                   probability_diagnostic(field, probability, m),
                   local_bayes_check(field, probability, m, options.coverage)};
      s_pt.add(n, row.d_pt_x0);
      s_prob_pt.add(n, row.d_prob_pt);
      s_prob_prob.add(n, row.d_prob_prob);
      s_local.add(n, row.local_bayes);
      run.rows.push_back(row);
    }

    for (auto* s : {&s_pt, &s_prob_pt, &s_prob_prob, &s_local}) {
      std::optional<Verdict> verdict;
      try {
        verdict = convergence_verdict(*s);
      } catch (const InsufficientData&) {
      }
      run.series.push_back(SeriesResult{std::move(*s), verdict});
    }
    return run;
  } catch (const ZeroMass& e) {
    throw ZeroMass(scenario.name + ", " + stage + ": " + e.what());
  } catch (const TruncationError& e) {
    throw TruncationError(scenario.name + ", " + stage + ": " + e.what());
  } catch (const GridMismatch& e) {
    throw GridMismatch(scenario.name + ", " + stage + ": " + e.what());
  }
}

}  // namespace mplab
