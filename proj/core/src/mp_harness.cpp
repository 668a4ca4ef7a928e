#include "mplab/mp_harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mplab/errors.hpp"

namespace mplab::mp {

namespace {

std::string number(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

// Unnormalized B1 column at data (y, z): zeta -> sum over eta of
// w(eta) p(y, z | eta, zeta) pi(eta, zeta).
std::vector<double> b1_column_values(const JointModel& joint, const Axis& eta,
                                     const std::vector<double>& weighted_prior, double y, double z) {
  const std::size_t n_eta = eta.size();
  std::vector<double> eta_values(n_eta);
  for (std::size_t i = 0; i < n_eta; ++i) eta_values[i] = eta.value(i);
  std::vector<double> values(joint.zeta.size(), 0.0);
  for (std::size_t k = 0; k < joint.zeta.size(); ++k) {
    const double zeta = joint.zeta[k];
    const double* row = weighted_prior.data() + k * n_eta;
    double sum = 0.0;
    for (std::size_t i = 0; i < n_eta; ++i) {
      if (row[i] != 0.0) {
        sum += row[i] * joint.density(y, z, eta_values[i], zeta);
      }
    }
    values[k] = sum;
  }
  return values;
}

// weight(eta_i) * pi(eta_i, zeta_k), zeta-major.
std::vector<double> weighted_prior_table(const JointModel& joint, const Axis& eta, const JointPrior& prior) {
  std::vector<double> table(joint.zeta.size() * eta.size());
  for (std::size_t k = 0; k < joint.zeta.size(); ++k) {
    for (std::size_t i = 0; i < eta.size(); ++i) {
      const double p = prior(eta.value(i), joint.zeta[k]);
      if (!std::isfinite(p) || p < 0.0) {
        throw std::invalid_argument("joint prior must be finite and >= 0 on the grids");
      }
      table[k * eta.size() + i] = eta.weight(i) * p;
    }
  }
  return table;
}

NormalizedDensity b1_column(const JointModel& joint, const Axis& eta, const std::vector<double>& table,
                            double y, double z) {
  try {
    return normalize(GriddedDensity(joint.zeta, b1_column_values(joint, eta, table, y, z)));
  } catch (const ZeroMass&) {
    throw ZeroMass("b1_marginal_posterior: no posterior mass at (y, z) = (" + number(y) + ", " +
                   number(z) + ")");
  }
}

}  // namespace

Axis Axis::log_scale(double lo_value, double hi_value, std::size_t n) {
  if (!(lo_value > 0.0)) {
    throw std::invalid_argument("Axis::log_scale: bounds must be positive");
  }
  return Axis(Grid1D(std::log(lo_value), std::log(hi_value), n), AxisScale::log);
}

double Axis::value(std::size_t i) const noexcept {
  return scale_ == AxisScale::log ? std::exp(coords_[i]) : coords_[i];
}

double Axis::weight(std::size_t i) const noexcept {
  return scale_ == AxisScale::log ? coords_.weight(i) * std::exp(coords_[i]) : coords_.weight(i);
}

Axis Axis::extended() const {
  const double width = coords_.hi() - coords_.lo();
  const std::size_t extra = coords_.size() - 1;
  if (scale_ == AxisScale::log) {
    const std::size_t half = extra / 2;
    const double lo = coords_.lo() - static_cast<double>(half) * coords_.step();
    const double hi = coords_.hi() + static_cast<double>(extra - half) * coords_.step();
    return Axis(Grid1D(lo, hi, coords_.size() + extra), scale_);
  }
  return Axis(Grid1D(coords_.lo(), coords_.hi() + width, coords_.size() + extra), scale_);
}

MarginalPosteriorFamily::MarginalPosteriorFamily(Grid1D zeta_grid, Grid1D z_grid,
                                                 std::vector<NormalizedDensity> columns)
    : zeta_grid_(zeta_grid), z_grid_(z_grid), columns_(std::move(columns)) {
  if (columns_.size() != z_grid_.size()) {
    throw std::invalid_argument("MarginalPosteriorFamily: one column per z node required");
  }
  for (const auto& c : columns_) {
    if (!(c.grid() == zeta_grid_)) {
      throw GridMismatch("MarginalPosteriorFamily: column not on the zeta grid");
    }
  }
}

std::vector<std::size_t> probe_indices(const Grid1D& grid, std::size_t max_count,
                                       std::span<const double> anchors) {
  std::vector<std::size_t> picked;
  for (double a : anchors) {
    if (picked.size() == max_count) {
      break;
    }
    if (grid.contains(a)) {
      picked.push_back(grid.nearest(a));
    }
  }
  const std::size_t fill = max_count - picked.size();
  const std::size_t n = grid.size();
  if (fill == 1) {
    picked.push_back(n / 2);
  } else if (fill > 1) {
    const std::size_t m = std::min(fill, n);
    for (std::size_t k = 0; k < m; ++k) {
      picked.push_back(static_cast<std::size_t>(
          std::llround(static_cast<double>(k) * static_cast<double>(n - 1) / static_cast<double>(m - 1))));
    }
  }
  std::sort(picked.begin(), picked.end());
  picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
  return picked;
}

StructureCheck check_z_depends_only_on_zeta(const JointModel& joint, double tol, const ProbeOptions& probes) {
  const auto eta_idx = probe_indices(joint.eta.coords(), probes.max_per_axis);
  const auto zeta_idx = probe_indices(joint.zeta, probes.max_per_axis, probes.zeta_anchors);
  const auto z_idx = probe_indices(joint.z, probes.max_per_axis, probes.z_anchors);

  double variation = 0.0;
  for (std::size_t kz : zeta_idx) {
    const double zeta = joint.zeta[kz];
    for (std::size_t jz : z_idx) {
      const double z = joint.z[jz];
      double lo = std::numeric_limits<double>::infinity();
      double hi = -std::numeric_limits<double>::infinity();
      for (std::size_t ie : eta_idx) {
        const double eta = joint.eta.value(ie);
        double marginal = 0.0;
        for (std::size_t iy = 0; iy < joint.y.size(); ++iy) {
          marginal += joint.y.weight(iy) * joint.density(joint.y.value(iy), z, eta, zeta);
        }
        lo = std::min(lo, marginal);
        hi = std::max(hi, marginal);
      }
      variation = std::max(variation, hi - lo);
    }
  }
  return StructureCheck{variation <= tol, variation};
}

B1Result b1_marginal_posterior(const JointModel& joint, const JointPrior& prior, double y,
                               const B1Options& options) {
  const auto table = weighted_prior_table(joint, joint.eta, prior);
  std::vector<NormalizedDensity> columns;
  columns.reserve(joint.z.size());
  for (std::size_t j = 0; j < joint.z.size(); ++j) {
    columns.push_back(b1_column(joint, joint.eta, table, y, joint.z[j]));
  }
  MarginalPosteriorFamily family(joint.zeta, joint.z, std::move(columns));

  const auto z_idx = probe_indices(joint.z, options.probes.max_per_axis, options.probes.z_anchors);

  double y_variation = 0.0;
  for (std::size_t j : z_idx) {
    std::vector<NormalizedDensity> at_probes{family.column(j)};
    for (double yp : options.y_probes) {
      at_probes.push_back(b1_column(joint, joint.eta, table, yp, joint.z[j]));
    }
    for (std::size_t p = 0; p < at_probes.size(); ++p) {
      for (std::size_t q = p + 1; q < at_probes.size(); ++q) {
        y_variation = std::max(y_variation, l1_distance(at_probes[p], at_probes[q]));
      }
    }
  }

  const Axis wide_eta = joint.eta.extended();
  const auto wide_table = weighted_prior_table(joint, wide_eta, prior);
  double extension_shift = 0.0;
  for (std::size_t j : z_idx) {
    const auto wide = b1_column(joint, wide_eta, wide_table, y, joint.z[j]);
    extension_shift = std::max(extension_shift, l1_distance(family.column(j), wide));
  }
  if (extension_shift > options.extension_tol) {
    throw TruncationError("b1_marginal_posterior: doubling the eta axis moves a column by L1 " +
                          number(extension_shift) + " (> " + number(options.extension_tol) +
                          "); the eta grid truncates the posterior");
  }
  return B1Result{std::move(family), y_variation, extension_shift};
}

MarginalPosteriorFamily b2_marginal_posterior(const ReducedModel& reduced, const GriddedDensity& prior_zeta) {
  if (!(prior_zeta.grid() == reduced.zeta)) {
    throw GridMismatch("b2_marginal_posterior: prior is not on the reduced model's zeta grid");
  }
  std::vector<NormalizedDensity> columns;
  columns.reserve(reduced.z.size());
  for (std::size_t j = 0; j < reduced.z.size(); ++j) {
    const double z = reduced.z[j];
    std::vector<double> values(reduced.zeta.size());
    for (std::size_t k = 0; k < reduced.zeta.size(); ++k) {
      values[k] = reduced.density(z, reduced.zeta[k]) * prior_zeta[k];
    }
    try {
      columns.push_back(normalize(GriddedDensity(reduced.zeta, std::move(values))));
    } catch (const ZeroMass&) {
      throw ZeroMass("b2_marginal_posterior: no posterior mass at z = " + number(z));
    }
  }
  return MarginalPosteriorFamily(reduced.zeta, reduced.z, std::move(columns));
}

double bayes_compatibility_residual(const MarginalPosteriorFamily& family, const ReducedModel& reduced,
                                    const ProbeOptions& probes) {
  if (!(family.zeta_grid() == reduced.zeta) || !(family.z_grid() == reduced.z)) {
    throw GridMismatch("bayes_compatibility_residual: family and reduced model grids differ");
  }
  const auto zeta_idx = probe_indices(reduced.zeta, probes.max_per_axis, probes.zeta_anchors);
  const auto z_idx = probe_indices(reduced.z, probes.max_per_axis, probes.z_anchors);

  const std::size_t pz = z_idx.size();
  std::vector<double> log_ratio(zeta_idx.size() * pz);
  for (std::size_t a = 0; a < zeta_idx.size(); ++a) {
    const double zeta = reduced.zeta[zeta_idx[a]];
    for (std::size_t b = 0; b < pz; ++b) {
      const double z = reduced.z[z_idx[b]];
      const double posterior = family.column(z_idx[b])[zeta_idx[a]];
      const double likelihood = reduced.density(z, zeta);
      if (!(posterior > 0.0) || !(likelihood > 0.0)) {
        throw SupportViolation("bayes_compatibility_residual: non-positive value at (zeta, z) = (" +
                               number(zeta) + ", " + number(z) + "); shrink the probes to the common support");
      }
      log_ratio[a * pz + b] = std::log(posterior) - std::log(likelihood);
    }
  }

  double residual = 0.0;
  for (std::size_t a = 0; a < zeta_idx.size(); ++a) {
    for (std::size_t c = a + 1; c < zeta_idx.size(); ++c) {
      for (std::size_t b = 0; b < pz; ++b) {
        for (std::size_t d = b + 1; d < pz; ++d) {
          const double dd = log_ratio[a * pz + b] - log_ratio[a * pz + d] - log_ratio[c * pz + b] +
                            log_ratio[c * pz + d];
          residual = std::max(residual, std::abs(dd));
        }
      }
    }
  }
  return residual;
}

GriddedDensity eta_marginal_prior(const JointModel& joint, const JointPrior& prior) {
  return GriddedDensity::tabulate(joint.zeta, [&](double zeta) {
    double sum = 0.0;
    for (std::size_t i = 0; i < joint.eta.size(); ++i) {
      sum += joint.eta.weight(i) * prior(joint.eta.value(i), zeta);
    }
    return sum;
  });
}

double max_column_l1(const MarginalPosteriorFamily& a, const MarginalPosteriorFamily& b) {
  if (!(a.z_grid() == b.z_grid()) || !(a.zeta_grid() == b.zeta_grid())) {
    throw GridMismatch("max_column_l1: families live on different grids");
  }
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    worst = std::max(worst, l1_distance(a.column(j), b.column(j)));
  }
  return worst;
}

std::string_view to_string(MPVerdict verdict) noexcept {
  switch (verdict) {
    case MPVerdict::paradox_detected:
      return "paradox_detected";
    case MPVerdict::consistent:
      return "consistent";
    case MPVerdict::structure_violated:
      return "structure_violated";
  }
  return "structure_violated";
}

MPReport run_mp_scenario(const MPScenario& s) {
  std::string stage;
  try {
    stage = "z-marginal structure check";
    const StructureCheck z_check = check_z_depends_only_on_zeta(s.joint, s.structure_tol, s.probes);

    stage = "route B1";
    const B1Result b1 = b1_marginal_posterior(s.joint, s.prior, s.y, s.b1);

    stage = "route B2";
    const MarginalPosteriorFamily b2 = b2_marginal_posterior(s.reduced, s.prior_zeta);

    stage = "B1 compatibility residual";
    const double residual_b1 = bayes_compatibility_residual(b1.family, s.reduced, s.probes);
    stage = "B2 compatibility residual";
    const double residual_b2 = bayes_compatibility_residual(b2, s.reduced, s.probes);

    stage = "route comparison";
    const double route_l1 = max_column_l1(b1.family, b2);

    MPVerdict verdict = MPVerdict::consistent;
    if (!z_check.passed || b1.y_variation > s.structure_tol) {
      verdict = MPVerdict::structure_violated;
    } else if (residual_b1 > 10.0 * s.compatibility_tol) {
      verdict = MPVerdict::paradox_detected;
    }
    return MPReport{z_check.variation, b1.y_variation, residual_b1, residual_b2, route_l1, verdict};
  } catch (const ZeroMass& e) {
    throw ZeroMass("scenario '" + s.name + "', " + stage + ": " + e.what());
  } catch (const TruncationError& e) {
    throw TruncationError("scenario '" + s.name + "', " + stage + ": " + e.what());
  } catch (const SupportViolation& e) {
    throw SupportViolation("scenario '" + s.name + "', " + stage + ": " + e.what());
  } catch (const GridMismatch& e) {
    throw GridMismatch("scenario '" + s.name + "', " + stage + ": " + e.what());
  }
}

namespace {

// z and zeta share [0.05, 20.05] with step 0.025 at 801 points, so the
// probe anchors 0.5 and 2 are exact nodes.
Grid1D ratio_grid(std::size_t points) { return Grid1D(0.05, 20.05, points); }

}  // namespace

JointModel exp_ratio_joint(std::size_t points, std::size_t log_points) {
  return JointModel{
      "exp-ratio",
      [](double y, double z, double eta, double zeta) {
        return zeta * eta * eta * y * std::exp(-eta * y * (1.0 + zeta * z));
      },
      Axis(Grid1D(-28.0, 22.0, log_points), AxisScale::log),
      Axis(Grid1D(-16.0, 6.0, log_points), AxisScale::log),
      ratio_grid(points),
      ratio_grid(points),
  };
}

ReducedModel exp_ratio_reduced(std::size_t points) {
  return ReducedModel{
      "exp-ratio reduced",
      [](double z, double zeta) {
        const double c = 1.0 + zeta * z;
        return zeta / (c * c);
      },
      ratio_grid(points),
      ratio_grid(points),
  };
}

std::vector<std::pair<std::string, std::string>> scenario_catalog() {
  return {
      {"exp-ratio", "exponential-ratio model under the improper prior d eta d zeta"},
      {"exp-ratio-proper", "exponential-ratio model under the proper truncated prior d eta / eta x uniform zeta"},
      {"exp-ratio-broken", "model whose z-marginal depends on eta (structure check must fail)"},
  };
}

MPScenario make_scenario(std::string_view name, std::size_t points) {
  JointModel joint = exp_ratio_joint(points);
  ReducedModel reduced = exp_ratio_reduced(points);
  const auto flat_zeta = GriddedDensity::tabulate(reduced.zeta, [](double) { return 1.0; });

  if (name == "exp-ratio") {
    return MPScenario{std::string(name), scenario_catalog()[0].second, joint, reduced,
                      [](double, double) { return 1.0; }, flat_zeta, 1.0, {}, {}};
  }
  if (name == "exp-ratio-proper") {
    JointPrior prior = [](double eta, double) { return 1.0 / eta; };
    GriddedDensity prior_zeta = eta_marginal_prior(joint, prior);
    return MPScenario{std::string(name), scenario_catalog()[1].second, joint, reduced, prior,
                      std::move(prior_zeta), 1.0, {}, {}};
  }
  if (name == "exp-ratio-broken") {
    // z ~ N(eta, 1) independent of y ~ Gamma(2, rate zeta): the z-marginal moves with eta.
    joint.label = "exp-ratio-broken";
    joint.density = [](double y, double z, double eta, double zeta) {
      const double d = z - eta;
      return zeta * zeta * y * std::exp(-zeta * y) * std::exp(-0.5 * d * d) / std::sqrt(2.0 * std::numbers::pi);
    };
    return MPScenario{std::string(name), scenario_catalog()[2].second, joint, reduced,
                      [](double, double) { return 1.0; }, flat_zeta, 1.0, {}, {}};
  }
  throw ConfigError("unknown marginalization scenario '" + std::string(name) + "'");
}

}  // namespace mplab::mp
