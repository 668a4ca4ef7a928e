#include "mplab/stone.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace mplab::stone {

GaussianParams::GaussianParams(double mean, double variance) : mean(mean), variance(variance) {
  if (!(variance > 0.0) || !std::isfinite(variance) || !std::isfinite(mean)) {
    throw std::invalid_argument("GaussianParams: need finite mean and variance > 0");
  }
}

double GaussianParams::log_pdf(double t) const noexcept {
  const double d = t - mean;
  return -0.5 * d * d / variance - 0.5 * std::log(2.0 * std::numbers::pi * variance);
}

double GaussianParams::pdf(double t) const noexcept { return std::exp(log_pdf(t)); }

double GaussianParams::sd() const noexcept { return std::sqrt(variance); }

StoneConfig::StoneConfig(double a, double n) : a(a), n(n) {
  if (!(n > 0.0) || !std::isfinite(n) || !std::isfinite(a)) {
    throw std::invalid_argument("StoneConfig: need finite a and n > 0");
  }
}

GaussianParams posterior_exact(const StoneConfig& cfg, double x) {
  const double s = cfg.shrinkage();
  return GaussianParams(s * (x + cfg.a), s);
}

GaussianParams marginal_exact(const StoneConfig& cfg) {
  return GaussianParams(cfg.a * cfg.n, 1.0 + cfg.n);
}

GaussianParams pointwise_limit(double a, double x) { return GaussianParams(x + a, 1.0); }

GaussianParams probability_limit(double x) { return GaussianParams(x, 1.0); }

NormalizedDensity tabulate(const GaussianParams& g, const Grid1D& grid) {
  std::vector<double> logs(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    logs[i] = g.log_pdf(grid[i]);
  }
  return normalize_log(grid, logs);
}

}  // namespace mplab::stone
