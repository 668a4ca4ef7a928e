#pragma once

#include <cstddef>
#include <optional>

namespace mplab {

/// Uniform one-dimensional evaluation grid: n_points nodes from lo to hi
/// inclusive, spacing (hi - lo) / (n_points - 1).
class Grid1D {
 public:
  /// Throws std::invalid_argument unless lo < hi (both finite) and n_points >= 2.
  Grid1D(double lo, double hi, std::size_t n_points);

  /// Grid whose step is a power of two and whose nodes are integer multiples
  /// of that step, covering [lo, hi] with at least `min_points` nodes. Every
  /// dyadic rational coarser than the step (0, 1, 0.5, ...) inside the range
  /// is then an exact node.
  static Grid1D lattice(double lo, double hi, std::size_t min_points);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::size_t size() const noexcept { return n_points_; }
  double step() const noexcept { return step_; }

  double operator[](std::size_t i) const noexcept {
    return lo_ + static_cast<double>(i) * step_;
  }

  /// Trapezoid weight of node i.
  double weight(std::size_t i) const noexcept {
    return (i == 0 || i + 1 == n_points_) ? 0.5 * step_ : step_;
  }

  /// Index of the node equal to x up to a tiny fraction of the step.
  std::optional<std::size_t> find(double x) const noexcept;

  /// Index of the node closest to x (clamped to the grid).
  std::size_t nearest(double x) const noexcept;

  bool contains(double x) const noexcept { return x >= lo_ && x <= hi_; }

  bool operator==(const Grid1D& other) const noexcept {
    return lo_ == other.lo_ && hi_ == other.hi_ && n_points_ == other.n_points_;
  }

 private:
  double lo_;
  double hi_;
  std::size_t n_points_;
  double step_;
};

}  // namespace mplab
