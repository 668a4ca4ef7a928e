#pragma once

#include "mplab/density.hpp"
#include "mplab/grid.hpp"
#include "mplab/model.hpp"

namespace mplab::stone {

/// N(mean, variance).
struct GaussianParams {
  double mean;
  double variance;

  GaussianParams(double mean, double variance);

  double log_pdf(double t) const noexcept;
  double pdf(double t) const noexcept;
  double sd() const noexcept;
};

/// Exponential tilt rate a and taper index n > 0 of the prior sequence
/// exp(a theta - theta^2 / 2n).
struct StoneConfig {
  double a;
  double n;

  StoneConfig(double a, double n);

  /// n / (1 + n), the posterior variance under pi_n.
  double shrinkage() const noexcept { return n / (1.0 + n); }
};

/// pi_n(theta | x) for x ~ N(theta, 1): mean s (x + a), variance s, with s = n / (1 + n).
GaussianParams posterior_exact(const StoneConfig& cfg, double x);

/// m_n(x): mean a n, variance 1 + n.
GaussianParams marginal_exact(const StoneConfig& cfg);

/// Formal posterior of the improper prior e^{a theta}: N(x + a, 1).
GaussianParams pointwise_limit(double a, double x);

/// N(x, 1), independent of a.
GaussianParams probability_limit(double x);

/// Gaussian tabulated on the grid and renormalized there.
NormalizedDensity tabulate(const GaussianParams& g, const Grid1D& grid);

/// Tabulates theta -> family(x) for every x-grid node.
template <typename Family>
PosteriorField tabulate_field(const Grid1D& theta_grid, const Grid1D& x_grid, Family&& family) {
  return PosteriorField::tabulate(theta_grid, x_grid, [&family](double theta, double x) {
    return family(x).log_pdf(theta);
  });
}

}  // namespace mplab::stone
