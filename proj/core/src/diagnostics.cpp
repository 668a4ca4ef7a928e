#include "mplab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mplab/errors.hpp"

namespace mplab {

namespace {

void require_shared_grids(const PosteriorField& a, const PosteriorField& b, const char* what) {
  if (!(a.theta_grid() == b.theta_grid()) || !(a.x_grid() == b.x_grid())) {
    throw GridMismatch(std::string(what) + ": fields live on different grids");
  }
}

void require_marginal_grid(const PosteriorField& field, const NormalizedDensity& m, const char* what) {
  if (!(field.x_grid() == m.grid())) {
    throw GridMismatch(std::string(what) + ": marginal is not on the field's x-grid");
  }
}

double column_distance(const PosteriorField& a, const PosteriorField& b, std::size_t j) {
  return l1_distance(a.theta_grid(), a.band(j), b.band(j));
}

}  // namespace

void DiagnosticSeries::add(double n, double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw std::invalid_argument("DiagnosticSeries: values must be finite and >= 0");
  }
  if (!(n > 0.0) || (!entries_.empty() && !(n > entries_.back().n))) {
    throw std::invalid_argument("DiagnosticSeries: n must be positive and strictly increasing");
  }
  entries_.push_back({n, value});
}

std::string_view to_string(VerdictStatus status) noexcept {
  switch (status) {
    case VerdictStatus::converges_to_zero:
      return "converges_to_zero";
    case VerdictStatus::plateau:
      return "plateau";
    case VerdictStatus::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::string_view to_string(SeriesKind kind) noexcept {
  switch (kind) {
    case SeriesKind::pointwise_at_x:
      return "pointwise_at_x";
    case SeriesKind::probability:
      return "probability";
    case SeriesKind::local_bayes:
      return "local_bayes";
  }
  return "pointwise_at_x";
}

double pointwise_diagnostic(const PosteriorField& field, const PosteriorField& candidate, double x) {
  require_shared_grids(field, candidate, "pointwise_diagnostic");
  return column_distance(field, candidate, field.index_of(x));
}

double probability_diagnostic(const PosteriorField& field, const PosteriorField& candidate,
                              const NormalizedDensity& marginal) {
  require_shared_grids(field, candidate, "probability_diagnostic");
  require_marginal_grid(field, marginal, "probability_diagnostic");
  if (!(integrate(marginal) >= 1.0 - 1e-3)) {
    throw TruncationError("probability_diagnostic: marginal has too little mass on the x-grid");
  }
  const Grid1D& x_grid = field.x_grid();
  double sum = 0.0;
  for (std::size_t j = 0; j < x_grid.size(); ++j) {
    if (marginal[j] == 0.0) {
      continue;
    }
    sum += x_grid.weight(j) * marginal[j] * column_distance(field, candidate, j);
  }
  return sum;
}

double local_bayes_check(const PosteriorField& field, const PosteriorField& candidate,
                         const NormalizedDensity& marginal, double coverage) {
  require_shared_grids(field, candidate, "local_bayes_check");
  require_marginal_grid(field, marginal, "local_bayes_check");
  const QuantileRegion region = quantile_region(marginal, coverage);
  double worst = 0.0;
  for (std::size_t j = region.first; j <= region.last; ++j) {
    worst = std::max(worst, column_distance(field, candidate, j));
  }
  return worst;
}

Verdict convergence_verdict(const DiagnosticSeries& series) {
  const auto& entries = series.entries();
  if (entries.size() < 3) {
    throw InsufficientData("convergence_verdict: need at least 3 entries, have " +
                           std::to_string(entries.size()));
  }
  if (entries.back().n / entries.front().n < 100.0 * (1.0 - 1e-12)) {
    throw InsufficientData("convergence_verdict: n must span at least two decades");
  }
  const double count = static_cast<double>(entries.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& e : entries) {
    mean_x += std::log(e.n);
    mean_y += std::log(std::max(e.value, kValueFloor));
  }
  mean_x /= count;
  mean_y /= count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& e : entries) {
    const double dx = std::log(e.n) - mean_x;
    sxy += dx * (std::log(std::max(e.value, kValueFloor)) - mean_y);
    sxx += dx * dx;
  }
  const double slope = sxy / sxx;
  const double final_value = entries.back().value;

  VerdictStatus status = VerdictStatus::inconclusive;
  if (slope <= kConvergentSlope && final_value < kConvergentLevel) {
    status = VerdictStatus::converges_to_zero;
  } else if (std::abs(slope) < kPlateauSlope && final_value >= kConvergentLevel) {
    status = VerdictStatus::plateau;
  }
  return Verdict{status, slope, final_value};
}

}  // namespace mplab
