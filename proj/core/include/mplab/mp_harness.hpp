#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mplab/density.hpp"
#include "mplab/grid.hpp"

namespace mplab::mp {

enum class AxisScale { linear, log };

/// Integration axis: a uniform grid in a coordinate u, mapped to the
/// variable by identity (linear) or exp (log). Log axes resolve positive
/// scale variables over many decades with few nodes.
class Axis {
 public:
  Axis(Grid1D coords, AxisScale scale) : coords_(coords), scale_(scale) {}

  static Axis linear(double lo, double hi, std::size_t n) { return Axis(Grid1D(lo, hi, n), AxisScale::linear); }
  /// Nodes uniform in log(value) between lo_value and hi_value (both > 0).
  static Axis log_scale(double lo_value, double hi_value, std::size_t n);

  const Grid1D& coords() const noexcept { return coords_; }
  AxisScale scale() const noexcept { return scale_; }
  std::size_t size() const noexcept { return coords_.size(); }

  double value(std::size_t i) const noexcept;
  /// Quadrature weight in the variable: trapezoid weight times the Jacobian.
  double weight(std::size_t i) const noexcept;

  /// Same step, twice the coordinate width. Log axes grow on both sides;
  /// linear axes grow upward only so that a lower bound at 0 stays put.
  Axis extended() const;

 private:
  Grid1D coords_;
  AxisScale scale_;
};

/// p(y, z | eta, zeta) with data x = (y, z) and parameter theta = (eta, zeta).
struct JointModel {
  std::string label;
  std::function<double(double y, double z, double eta, double zeta)> density;
  Axis y;
  Axis eta;
  Grid1D z;
  Grid1D zeta;
};

/// p~(z | zeta), the z-marginal of a joint model that depends on theta only through zeta.
struct ReducedModel {
  std::string label;
  std::function<double(double z, double zeta)> density;
  Grid1D z;
  Grid1D zeta;
};

/// Possibly improper prior density pi(eta, zeta).
using JointPrior = std::function<double(double eta, double zeta)>;

/// One normalized density over the zeta-grid per z-grid node.
class MarginalPosteriorFamily {
 public:
  MarginalPosteriorFamily(Grid1D zeta_grid, Grid1D z_grid, std::vector<NormalizedDensity> columns);

  const Grid1D& zeta_grid() const noexcept { return zeta_grid_; }
  const Grid1D& z_grid() const noexcept { return z_grid_; }
  const NormalizedDensity& column(std::size_t j) const { return columns_.at(j); }
  std::size_t size() const noexcept { return columns_.size(); }

 private:
  Grid1D zeta_grid_;
  Grid1D z_grid_;
  std::vector<NormalizedDensity> columns_;
};

/// Decimated probe lattice used by checks whose cost grows as a power of the
/// grid size: nearest nodes to the anchors plus evenly spaced fill, sorted.
struct ProbeOptions {
  std::size_t max_per_axis = 32;
  std::vector<double> zeta_anchors{0.5, 2.0};
  std::vector<double> z_anchors{0.5, 2.0};
};

std::vector<std::size_t> probe_indices(const Grid1D& grid, std::size_t max_count,
                                       std::span<const double> anchors = {});

struct StructureCheck {
  bool passed;
  double variation;
};

/// Integrates y out and measures, for each probed (z, zeta), the spread
/// (max - min) of p(z | eta, zeta) across the probed eta nodes.
StructureCheck check_z_depends_only_on_zeta(const JointModel& joint, double tol,
                                            const ProbeOptions& probes = {});

struct B1Options {
  std::vector<double> y_probes{0.5, 1.0, 2.0};
  double extension_tol = 1e-3;
  ProbeOptions probes;
};

struct B1Result {
  MarginalPosteriorFamily family;
  /// Largest L1 distance between columns computed at different probe y
  /// (probed z columns).
  double y_variation;
  /// Largest column L1 shift when the eta axis is doubled.
  double extension_shift;
};

/// Route B1: full (formal) posterior over (eta, zeta) at data (y, z), then eta
/// integrated out. Throws ZeroMass per column, TruncationError if doubling the
/// eta axis moves a probed column by more than extension_tol in L1.
B1Result b1_marginal_posterior(const JointModel& joint, const JointPrior& prior, double y,
                               const B1Options& options = {});

/// Route B2: pi~(zeta | z) proportional to p~(z | zeta) pi(zeta).
MarginalPosteriorFamily b2_marginal_posterior(const ReducedModel& reduced, const GriddedDensity& prior_zeta);

/// With L = log family - log p~, the largest double difference
/// |L(a,b) - L(a,d) - L(c,b) + L(c,d)| over probed zeta pairs (a, c) and z
/// pairs (b, d). Zero iff family is proportional to p~(z | zeta) pi(zeta) for
/// some pi. Throws SupportViolation on a non-positive probed value,
/// GridMismatch if the grids differ.
double bayes_compatibility_residual(const MarginalPosteriorFamily& family, const ReducedModel& reduced,
                                    const ProbeOptions& probes = {});

/// integral of pi(eta, zeta) over the eta axis, on the zeta grid.
GriddedDensity eta_marginal_prior(const JointModel& joint, const JointPrior& prior);

/// Largest column-wise L1 distance between two families on the same grids.
double max_column_l1(const MarginalPosteriorFamily& a, const MarginalPosteriorFamily& b);

enum class MPVerdict { paradox_detected, consistent, structure_violated };

std::string_view to_string(MPVerdict verdict) noexcept;

struct MPScenario {
  std::string name;
  std::string description;
  JointModel joint;
  ReducedModel reduced;
  JointPrior prior;
  GriddedDensity prior_zeta;
  double y = 1.0;
  B1Options b1;
  ProbeOptions probes;
  double structure_tol = 1e-6;
  double compatibility_tol = 1e-6;
};

struct MPReport {
  double z_marginal_variation;
  double y_independence_variation;
  double compatibility_residual_b1;
  double compatibility_residual_b2;
  double route_l1;  // max over z of L1(B1 column, B2 column)
  MPVerdict verdict;
};

/// Structural checks, both routes, both residuals. Module errors are rethrown
/// with the scenario name and stage prepended.
MPReport run_mp_scenario(const MPScenario& scenario);

/// y1 ~ Exp(eta), y2 ~ Exp(zeta eta), (y, z) = (y1, y2 / y1):
/// p(y, z | eta, zeta) = zeta eta^2 y exp(-eta y (1 + zeta z)).
/// `points` nodes on z and zeta, `log_points` on the log-scale y and eta axes.
JointModel exp_ratio_joint(std::size_t points = 801, std::size_t log_points = 401);
/// p~(z | zeta) = zeta / (1 + zeta z)^2.
ReducedModel exp_ratio_reduced(std::size_t points = 801);

/// Registered scenarios: "exp-ratio" (prior d eta d zeta), "exp-ratio-proper"
/// (proper truncated prior d eta / eta x uniform zeta), "exp-ratio-broken"
/// (z-marginal depends on eta). Throws ConfigError for other names.
MPScenario make_scenario(std::string_view name, std::size_t points = 801);

/// (name, one-line description) for every registered scenario.
std::vector<std::pair<std::string, std::string>> scenario_catalog();

}  // namespace mplab::mp
