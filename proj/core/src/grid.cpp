#include "mplab/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace mplab {

Grid1D::Grid1D(double lo, double hi, std::size_t n_points)
    : lo_(lo), hi_(hi), n_points_(n_points), step_(0.0) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw std::invalid_argument("Grid1D: need finite lo < hi");
  }
  if (n_points < 2) {
    throw std::invalid_argument("Grid1D: need at least 2 points");
  }
  step_ = (hi - lo) / static_cast<double>(n_points - 1);
}

Grid1D Grid1D::lattice(double lo, double hi, std::size_t min_points) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi) || min_points < 2) {
    throw std::invalid_argument("Grid1D::lattice: need finite lo < hi and min_points >= 2");
  }
  const double raw = (hi - lo) / static_cast<double>(min_points - 1);
  const double step = std::exp2(std::floor(std::log2(raw)));
  const double first = std::floor(lo / step);
  const double last = std::ceil(hi / step);
  const auto n = static_cast<std::size_t>(last - first) + 1;
  return Grid1D(first * step, last * step, n);
}

std::optional<std::size_t> Grid1D::find(double x) const noexcept {
  const std::size_t i = nearest(x);
  if (std::abs((*this)[i] - x) <= 1e-9 * step_) {
    return i;
  }
  return std::nullopt;
}

std::size_t Grid1D::nearest(double x) const noexcept {
  if (!(x > lo_)) {
    return 0;
  }
  if (!(x < hi_)) {
    return n_points_ - 1;
  }
  const double pos = std::round((x - lo_) / step_);
  const auto i = static_cast<std::size_t>(pos);
  return i < n_points_ ? i : n_points_ - 1;
}

}  // namespace mplab
