#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mplab/density.hpp"
#include "mplab/grid.hpp"

namespace mplab {

/// Sampling model p(x | theta), stored as a log-density so that products
/// with wide priors stay representable.
class LikelihoodModel {
 public:
  using LogDensity = std::function<double(double theta, double x)>;

  LikelihoodModel(std::string label, LogDensity log_density)
      : label_(std::move(label)), log_density_(std::move(log_density)) {}

  const std::string& label() const noexcept { return label_; }
  double log_density(double theta, double x) const { return log_density_(theta, x); }
  double density(double theta, double x) const;

  /// x ~ N(theta, sd^2).
  static LikelihoodModel gaussian_location(double sd = 1.0);
  /// x ~ N(0, sigma^2), theta = sigma > 0.
  static LikelihoodModel gaussian_scale();
  /// The Gaussian scale model in log coordinates: theta = log sigma and
  /// x = log|X| with X ~ N(0, sigma^2). A location family in these coordinates.
  static LikelihoodModel log_abs_gaussian_scale();

 private:
  std::string label_;
  LogDensity log_density_;
};

/// Checks that x -> p(x | theta) integrates to 1 within `tol` on x_grid for
/// every theta node inside [theta_lo, theta_hi]. Throws TruncationError naming
/// the worst theta otherwise. Returns the worst deviation seen.
double validate_likelihood(const LikelihoodModel& model, const Grid1D& theta_grid,
                           const Grid1D& x_grid, double theta_lo, double theta_hi,
                           double tol = 1e-4);

/// Family n -> pi_n(theta) of proper (unnormalized) priors, in log form.
class PriorSequence {
 public:
  using LogValue = std::function<double(double n, double theta)>;

  PriorSequence(std::string label, LogValue log_value)
      : label_(std::move(label)), log_value_(std::move(log_value)) {}

  const std::string& label() const noexcept { return label_; }
  double log_value(double n, double theta) const { return log_value_(n, theta); }
  double value(double n, double theta) const;

  GriddedLogDensity tabulate(double n, const Grid1D& theta_grid) const;
  /// Throws ZeroMass if pi_n has no mass on the grid.
  NormalizedDensity normalized(double n, const Grid1D& theta_grid) const;

 private:
  std::string label_;
  LogValue log_value_;
};

/// pi_n(theta) = exp(a theta - theta^2 / (2n)), i.e. N(a n, n) up to a constant;
/// tapers the improper prior e^{a theta}. a = 0 tapers the uniform prior.
PriorSequence stone_prior_sequence(double a);

/// Per-x normalized conditional densities over theta, one column per x-grid
/// node. Columns are kept in banded form (exact zeros trimmed).
class PosteriorField {
 public:
  PosteriorField(Grid1D theta_grid, Grid1D x_grid, std::vector<Band> columns);

  const Grid1D& theta_grid() const noexcept { return theta_grid_; }
  const Grid1D& x_grid() const noexcept { return x_grid_; }
  std::size_t size() const noexcept { return columns_.size(); }

  const Band& band(std::size_t j) const noexcept { return columns_[j]; }
  /// Dense copy of column j.
  NormalizedDensity column(std::size_t j) const;
  /// Column index of the x-grid node equal to x. Throws GridMismatch otherwise.
  std::size_t index_of(double x) const;

  /// Tabulates theta -> exp(log_density(theta, x)), normalized per column.
  template <typename F>
  static PosteriorField tabulate(const Grid1D& theta_grid, const Grid1D& x_grid, F&& log_density) {
    std::vector<Band> columns;
    columns.reserve(x_grid.size());
    std::vector<double> logs(theta_grid.size());
    for (std::size_t j = 0; j < x_grid.size(); ++j) {
      const double x = x_grid[j];
      for (std::size_t i = 0; i < theta_grid.size(); ++i) {
        logs[i] = log_density(theta_grid[i], x);
      }
      columns.push_back(to_band(normalize_log(theta_grid, logs)));
    }
    return PosteriorField(theta_grid, x_grid, std::move(columns));
  }

 private:
  Grid1D theta_grid_;
  Grid1D x_grid_;
  std::vector<Band> columns_;
};

/// normalize(theta -> p(x | theta) pi(theta)). Throws ZeroMass when the
/// product vanishes on the grid.
NormalizedDensity posterior(const LikelihoodModel& model, const GriddedLogDensity& prior, double x);
NormalizedDensity posterior(const LikelihoodModel& model, const GriddedDensity& prior, double x);

/// m(x) = integral of p(x | theta) pi(theta) dtheta on x_grid, normalized.
/// Throws TruncationError if more than 1e-3 of the predictive mass falls
/// outside x_grid.
NormalizedDensity marginal_data_density(const LikelihoodModel& model, const NormalizedDensity& prior,
                                        const Grid1D& x_grid);

/// posterior() at every x-grid node. ZeroMass names the offending x.
PosteriorField posterior_field(const LikelihoodModel& model, const GriddedLogDensity& prior,
                               const Grid1D& x_grid);
PosteriorField posterior_field(const LikelihoodModel& model, const GriddedDensity& prior,
                               const Grid1D& x_grid);

/// Formal posterior of an improper prior truncated to the theta grid. Same
/// numerics as posterior_field; the prior need not be normalizable off-grid.
PosteriorField formal_posterior(const LikelihoodModel& model, const GriddedLogDensity& improper_prior,
                                const Grid1D& x_grid);
PosteriorField formal_posterior(const LikelihoodModel& model, const GriddedDensity& improper_prior,
                                const Grid1D& x_grid);

}  // namespace mplab
