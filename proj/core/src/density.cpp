#include "mplab/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mplab/errors.hpp"

namespace mplab {

namespace {

void require_same_grid(const Grid1D& a, const Grid1D& b, const char* what) {
  if (!(a == b)) {
    throw GridMismatch(std::string(what) + ": densities live on different grids");
  }
}

double trapezoid(const Grid1D& grid, std::span<const double> values) {
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    sum += grid.weight(i) * values[i];
  }
  return sum;
}

}  // namespace

GriddedDensity::GriddedDensity(Grid1D grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("GriddedDensity: value count does not match grid");
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("GriddedDensity: values must be finite and >= 0");
    }
  }
}

NormalizedDensity NormalizedDensity::checked(GriddedDensity d) {
  const double mass = integrate(d);
  if (std::abs(mass - 1.0) > 1e-8) {
    throw std::invalid_argument("NormalizedDensity: integral is " + std::to_string(mass));
  }
  const Grid1D grid = d.grid();
  return NormalizedDensity(grid, std::vector<double>(d.values().begin(), d.values().end()));
}

GriddedLogDensity::GriddedLogDensity(Grid1D grid, std::vector<double> log_values)
    : grid_(grid), log_values_(std::move(log_values)) {
  if (log_values_.size() != grid_.size()) {
    throw std::invalid_argument("GriddedLogDensity: value count does not match grid");
  }
  for (double v : log_values_) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
      throw std::invalid_argument("GriddedLogDensity: log values must be < +inf and not NaN");
    }
  }
}

GriddedLogDensity GriddedLogDensity::from_density(const GriddedDensity& d) {
  std::vector<double> logs(d.size());
  std::transform(d.values().begin(), d.values().end(), logs.begin(),
                 [](double v) { return std::log(v); });
  return GriddedLogDensity(d.grid(), std::move(logs));
}

double integrate(const GriddedDensity& d) { return trapezoid(d.grid(), d.values()); }

NormalizedDensity normalize(const GriddedDensity& d) {
  const double mass = integrate(d);
  if (!std::isfinite(mass) || mass <= 0.0) {
    throw ZeroMass("normalize: density has no mass on its grid");
  }
  std::vector<double> values(d.values().begin(), d.values().end());
  for (double& v : values) {
    v /= mass;
  }
  return NormalizedDensity(d.grid(), std::move(values));
}

NormalizedDensity normalize_log(const Grid1D& grid, std::span<const double> log_values) {
  if (log_values.size() != grid.size()) {
    throw std::invalid_argument("normalize_log: value count does not match grid");
  }
  double peak = -std::numeric_limits<double>::infinity();
  for (double v : log_values) {
    if (std::isnan(v)) {
      throw ZeroMass("normalize_log: NaN log value");
    }
    peak = std::max(peak, v);
  }
  if (!std::isfinite(peak)) {
    throw ZeroMass("normalize_log: density is zero everywhere on its grid");
  }
  const double floor = peak - kLogFlushDepth;
  std::vector<double> values(log_values.size(), 0.0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (log_values[i] >= floor) {
      values[i] = std::exp(log_values[i] - peak);
    }
  }
  const double mass = trapezoid(grid, values);
  for (double& v : values) {
    v /= mass;
  }
  return NormalizedDensity(grid, std::move(values));
}

double l1_distance(const NormalizedDensity& p, const NormalizedDensity& q) {
  require_same_grid(p.grid(), q.grid(), "l1_distance");
  const Grid1D& grid = p.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sum += grid.weight(i) * std::abs(p[i] - q[i]);
  }
  return sum;
}

double l1_distance(const Grid1D& grid, const Band& p, const Band& q) {
  // Nodes outside both bands contribute exact zeros, so skipping them keeps
  // the sum bitwise identical to the dense loop.
  const std::size_t begin = std::min(p.offset, q.offset);
  const std::size_t end = std::min(std::max(p.end(), q.end()), grid.size());
  double sum = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    sum += grid.weight(i) * std::abs(p.at(i) - q.at(i));
  }
  return sum;
}

Band to_band(const GriddedDensity& d) {
  const auto values = d.values();
  const auto nonzero = [](double v) { return v != 0.0; };
  const auto first = std::find_if(values.begin(), values.end(), nonzero);
  if (first == values.end()) {
    return Band{};
  }
  const auto last = std::find_if(values.rbegin(), values.rend(), nonzero).base();
  return Band{static_cast<std::size_t>(first - values.begin()), std::vector<double>(first, last)};
}

NormalizedDensity from_band(const Grid1D& grid, const Band& band) {
  std::vector<double> values(grid.size(), 0.0);
  std::copy(band.values.begin(), band.values.end(),
            values.begin() + static_cast<std::ptrdiff_t>(band.offset));
  return NormalizedDensity::checked(GriddedDensity(grid, std::move(values)));
}

double relative_entropy(const NormalizedDensity& p, const GriddedDensity& base) {
  require_same_grid(p.grid(), base.grid(), "relative_entropy");
  const Grid1D& grid = p.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (p[i] == 0.0) {
      continue;
    }
    if (base[i] == 0.0) {
      throw SupportViolation("relative_entropy: p > 0 where the base measure vanishes (x = " +
                             std::to_string(grid[i]) + ")");
    }
    sum += grid.weight(i) * p[i] * std::log(p[i] / base[i]);
  }
  return -sum;
}

QuantileRegion quantile_region(const NormalizedDensity& m, double coverage) {
  if (!(coverage > 0.0 && coverage < 1.0)) {
    throw std::invalid_argument("quantile_region: coverage must lie in (0, 1)");
  }
  const Grid1D& grid = m.grid();
  const std::size_t n = grid.size();
  std::vector<double> cumulative(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    cumulative[i] = cumulative[i - 1] + 0.5 * grid.step() * (m[i - 1] + m[i]);
  }
  const double total = cumulative.back();
  const double tail = 0.5 * (1.0 - coverage);

  std::size_t first = 0;
  while (first + 1 < n && cumulative[first + 1] / total <= tail) {
    ++first;
  }
  std::size_t last = n - 1;
  while (last > first && 1.0 - cumulative[last - 1] / total <= tail) {
    --last;
  }
  return QuantileRegion{grid[first], grid[last], first, last};
}

}  // namespace mplab
