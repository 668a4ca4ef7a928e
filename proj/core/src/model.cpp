#include "mplab/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mplab/errors.hpp"

namespace mplab {

namespace {

const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

std::string describe_x(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

void posterior_logs(const LikelihoodModel& model, const GriddedLogDensity& prior, double x,
                    std::vector<double>& logs) {
  const Grid1D& grid = prior.grid();
  logs.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double lp = prior[i];
    logs[i] = std::isinf(lp) ? lp : lp + model.log_density(grid[i], x);
  }
}

}  // namespace

double LikelihoodModel::density(double theta, double x) const {
  return std::exp(log_density_(theta, x));
}

LikelihoodModel LikelihoodModel::gaussian_location(double sd) {
  if (!(sd > 0.0)) {
    throw std::invalid_argument("gaussian_location: sd must be positive");
  }
  const double log_norm = kLogSqrt2Pi + std::log(sd);
  return LikelihoodModel("gaussian-location", [sd, log_norm](double theta, double x) {
    const double z = (x - theta) / sd;
    return -0.5 * z * z - log_norm;
  });
}

LikelihoodModel LikelihoodModel::gaussian_scale() {
  return LikelihoodModel("gaussian-scale", [](double sigma, double x) {
    if (!(sigma > 0.0)) {
      return -std::numeric_limits<double>::infinity();
    }
    const double z = x / sigma;
    return -0.5 * z * z - kLogSqrt2Pi - std::log(sigma);
  });
}

LikelihoodModel LikelihoodModel::log_abs_gaussian_scale() {
  // U = log|X|, X ~ N(0, e^{2 theta}): density of V = U - theta is
  // 2 phi(e^v) e^v = sqrt(2/pi) exp(v - e^{2v}/2).
  const double log_const = 0.5 * std::log(2.0 / std::numbers::pi);
  return LikelihoodModel("log-abs-gaussian-scale", [log_const](double theta, double u) {
    const double v = u - theta;
    return log_const + v - 0.5 * std::exp(2.0 * v);
  });
}

double validate_likelihood(const LikelihoodModel& model, const Grid1D& theta_grid,
                           const Grid1D& x_grid, double theta_lo, double theta_hi, double tol) {
  double worst = 0.0;
  double worst_theta = 0.0;
  for (std::size_t i = 0; i < theta_grid.size(); ++i) {
    const double theta = theta_grid[i];
    if (theta < theta_lo || theta > theta_hi) {
      continue;
    }
    double mass = 0.0;
    for (std::size_t j = 0; j < x_grid.size(); ++j) {
      mass += x_grid.weight(j) * model.density(theta, x_grid[j]);
    }
    const double deviation = std::abs(mass - 1.0);
    if (!(deviation <= worst)) {
      worst = deviation;
      worst_theta = theta;
    }
  }
  if (!(worst <= tol)) {
    throw TruncationError("likelihood '" + model.label() + "' integrates to 1 only within " +
                          describe_x(worst) + " at theta = " + describe_x(worst_theta) +
                          "; widen the x-grid");
  }
  return worst;
}

double PriorSequence::value(double n, double theta) const {
  return std::exp(log_value_(n, theta));
}

GriddedLogDensity PriorSequence::tabulate(double n, const Grid1D& theta_grid) const {
  return GriddedLogDensity::tabulate(theta_grid,
                                     [this, n](double theta) { return log_value_(n, theta); });
}

NormalizedDensity PriorSequence::normalized(double n, const Grid1D& theta_grid) const {
  return normalize(tabulate(n, theta_grid));
}

PriorSequence stone_prior_sequence(double a) {
  std::ostringstream label;
  label << "stone(a=" << a << ")";
  return PriorSequence(label.str(), [a](double n, double theta) {
    return a * theta - theta * theta / (2.0 * n);
  });
}

PosteriorField::PosteriorField(Grid1D theta_grid, Grid1D x_grid, std::vector<Band> columns)
    : theta_grid_(theta_grid), x_grid_(x_grid), columns_(std::move(columns)) {
  if (columns_.size() != x_grid_.size()) {
    throw std::invalid_argument("PosteriorField: one column per x-grid node required");
  }
  for (const Band& b : columns_) {
    if (b.end() > theta_grid_.size()) {
      throw std::invalid_argument("PosteriorField: column extends past the theta grid");
    }
  }
}

NormalizedDensity PosteriorField::column(std::size_t j) const {
  return from_band(theta_grid_, columns_.at(j));
}

std::size_t PosteriorField::index_of(double x) const {
  if (const auto j = x_grid_.find(x)) {
    return *j;
  }
  throw GridMismatch("PosteriorField: x = " + describe_x(x) + " is not an x-grid node");
}

NormalizedDensity posterior(const LikelihoodModel& model, const GriddedLogDensity& prior, double x) {
  std::vector<double> logs;
  posterior_logs(model, prior, x, logs);
  try {
    return normalize_log(prior.grid(), logs);
  } catch (const ZeroMass&) {
    throw ZeroMass("posterior: likelihood x prior has no mass at x = " + describe_x(x));
  }
}

NormalizedDensity posterior(const LikelihoodModel& model, const GriddedDensity& prior, double x) {
  return posterior(model, GriddedLogDensity::from_density(prior), x);
}

NormalizedDensity marginal_data_density(const LikelihoodModel& model, const NormalizedDensity& prior,
                                        const Grid1D& x_grid) {
  const Grid1D& theta_grid = prior.grid();
  const Band support = to_band(prior);
  std::vector<double> values(x_grid.size(), 0.0);
  for (std::size_t j = 0; j < x_grid.size(); ++j) {
    const double x = x_grid[j];
    double sum = 0.0;
    for (std::size_t i = support.offset; i < support.end(); ++i) {
      sum += theta_grid.weight(i) * support.values[i - support.offset] *
             model.density(theta_grid[i], x);
    }
    values[j] = sum;
  }
  GriddedDensity m(x_grid, std::move(values));
  const double captured = integrate(m);
  if (!(1.0 - captured <= 1e-3)) {
    throw TruncationError("marginal_data_density: only " + describe_x(captured) +
                          " of the predictive mass lies on the x-grid; widen its bounds");
  }
  return normalize(m);
}

PosteriorField posterior_field(const LikelihoodModel& model, const GriddedLogDensity& prior,
                               const Grid1D& x_grid) {
  std::vector<Band> columns;
  columns.reserve(x_grid.size());
  for (std::size_t j = 0; j < x_grid.size(); ++j) {
    columns.push_back(to_band(posterior(model, prior, x_grid[j])));
  }
  return PosteriorField(prior.grid(), x_grid, std::move(columns));
}

PosteriorField posterior_field(const LikelihoodModel& model, const GriddedDensity& prior,
                               const Grid1D& x_grid) {
  return posterior_field(model, GriddedLogDensity::from_density(prior), x_grid);
}

PosteriorField formal_posterior(const LikelihoodModel& model, const GriddedLogDensity& improper_prior,
                                const Grid1D& x_grid) {
  return posterior_field(model, improper_prior, x_grid);
}

PosteriorField formal_posterior(const LikelihoodModel& model, const GriddedDensity& improper_prior,
                                const Grid1D& x_grid) {
  return posterior_field(model, improper_prior, x_grid);
}

}  // namespace mplab
