#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mplab/grid.hpp"

namespace mplab {

/// Nonnegative function values on a grid. Not necessarily normalizable in
/// the continuum (a truncated improper prior is a valid GriddedDensity).
class GriddedDensity {
 public:
  /// Throws std::invalid_argument on a size mismatch or a negative / non-finite value.
  GriddedDensity(Grid1D grid, std::vector<double> values);

  template <typename F>
  static GriddedDensity tabulate(const Grid1D& grid, F&& f) {
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      values[i] = f(grid[i]);
    }
    return GriddedDensity(grid, std::move(values));
  }

  const Grid1D& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

 protected:
  struct Unchecked {};
  GriddedDensity(Unchecked, Grid1D grid, std::vector<double> values)
      : grid_(grid), values_(std::move(values)) {}

 private:
  Grid1D grid_;
  std::vector<double> values_;
};

/// A GriddedDensity whose trapezoidal integral is 1 (within 1e-8).
class NormalizedDensity : public GriddedDensity {
 public:
  /// Wraps values that are already normalized. Throws std::invalid_argument
  /// if the integral is more than 1e-8 away from 1.
  static NormalizedDensity checked(GriddedDensity d);

 private:
  friend NormalizedDensity normalize(const GriddedDensity& d);
  friend NormalizedDensity normalize_log(const Grid1D& grid, std::span<const double> log_values);
  NormalizedDensity(Grid1D grid, std::vector<double> values)
      : GriddedDensity(Unchecked{}, grid, std::move(values)) {}
};

/// Log-domain values on a grid; -inf marks a zero. Used for priors and
/// likelihood products whose dynamic range exceeds double precision.
class GriddedLogDensity {
 public:
  /// Throws std::invalid_argument on NaN or +inf.
  GriddedLogDensity(Grid1D grid, std::vector<double> log_values);

  template <typename F>
  static GriddedLogDensity tabulate(const Grid1D& grid, F&& log_f) {
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      values[i] = log_f(grid[i]);
    }
    return GriddedLogDensity(grid, std::move(values));
  }

  /// log of every value (log 0 = -inf).
  static GriddedLogDensity from_density(const GriddedDensity& d);

  const Grid1D& grid() const noexcept { return grid_; }
  std::span<const double> log_values() const noexcept { return log_values_; }
  double operator[](std::size_t i) const noexcept { return log_values_[i]; }

 private:
  Grid1D grid_;
  std::vector<double> log_values_;
};

/// Run of a grid density between its first and last nonzero node; every
/// node outside [offset, offset + values.size()) is exactly zero.
struct Band {
  std::size_t offset = 0;
  std::vector<double> values;

  std::size_t end() const noexcept { return offset + values.size(); }
  double at(std::size_t i) const noexcept {
    return (i >= offset && i < end()) ? values[i - offset] : 0.0;
  }
};

/// Nodes whose log value falls more than this far below the maximum are
/// flushed to zero by normalize_log (relative level about 1e-40).
inline constexpr double kLogFlushDepth = 92.0;

/// Trapezoidal integral over the grid.
double integrate(const GriddedDensity& d);

/// Divides by the integral. Throws ZeroMass if the integral is <= 0 or not finite.
NormalizedDensity normalize(const GriddedDensity& d);

/// exp(log_values - max), flushed below kLogFlushDepth, then normalized.
/// Throws ZeroMass if every value is -inf.
NormalizedDensity normalize_log(const Grid1D& grid, std::span<const double> log_values);

inline NormalizedDensity normalize(const GriddedLogDensity& d) {
  return normalize_log(d.grid(), d.log_values());
}

/// Un-halved L1 (total-variation) distance, integral of |p - q|. In [0, 2].
/// Throws GridMismatch if the grids differ.
double l1_distance(const NormalizedDensity& p, const NormalizedDensity& q);

/// Same functional on banded storage; bitwise equal to the dense version.
double l1_distance(const Grid1D& grid, const Band& p, const Band& q);

Band to_band(const GriddedDensity& d);
NormalizedDensity from_band(const Grid1D& grid, const Band& band);

/// H(p, base) = -integral of p log(p / base), with 0 log 0 = 0.
/// Throws SupportViolation if p > 0 where base = 0, GridMismatch on grids.
double relative_entropy(const NormalizedDensity& p, const GriddedDensity& base);

struct QuantileRegion {
  double lo;
  double hi;
  std::size_t first;  // grid index of lo
  std::size_t last;   // grid index of hi, inclusive
};

/// Smallest grid-aligned interval leaving at most (1 - coverage) / 2 of the
/// mass in each tail. Throws std::invalid_argument unless 0 < coverage < 1.
QuantileRegion quantile_region(const NormalizedDensity& m, double coverage);

}  // namespace mplab
