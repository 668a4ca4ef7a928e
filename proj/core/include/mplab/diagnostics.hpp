#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mplab/density.hpp"
#include "mplab/model.hpp"

namespace mplab {

enum class SeriesKind { pointwise_at_x, probability, local_bayes };

/// Diagnostic values indexed by the taper index n.
class DiagnosticSeries {
 public:
  struct Entry {
    double n;
    double value;
  };

  DiagnosticSeries(std::string candidate_label, SeriesKind kind)
      : candidate_label_(std::move(candidate_label)), kind_(kind) {}

  /// Throws std::invalid_argument unless n exceeds every previous n and
  /// value is finite and >= 0.
  void add(double n, double value);

  const std::string& candidate_label() const noexcept { return candidate_label_; }
  SeriesKind kind() const noexcept { return kind_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

 private:
  std::string candidate_label_;
  SeriesKind kind_;
  std::vector<Entry> entries_;
};

enum class VerdictStatus { converges_to_zero, plateau, inconclusive };

std::string_view to_string(VerdictStatus status) noexcept;
std::string_view to_string(SeriesKind kind) noexcept;

struct Verdict {
  VerdictStatus status;
  double slope;        // least-squares d log(value) / d log(n)
  double final_value;  // value at the largest n
};

// Thresholds separating an O(n^-1/2) series from a flat one at desk-scale n.
inline constexpr double kConvergentSlope = -0.2;
inline constexpr double kConvergentLevel = 0.1;
inline constexpr double kPlateauSlope = 0.05;
inline constexpr double kValueFloor = 1e-12;

/// L1 distance between the two columns at the x-grid node x.
/// Throws GridMismatch if the fields' grids differ or x is not a node.
double pointwise_diagnostic(const PosteriorField& field, const PosteriorField& candidate, double x);

/// Per-x L1 distances averaged over m(x): the probability-limit functional.
/// Accumulated in ascending x.
double probability_diagnostic(const PosteriorField& field, const PosteriorField& candidate,
                              const NormalizedDensity& marginal);

/// Largest per-x L1 distance over the central `coverage` region of m.
double local_bayes_check(const PosteriorField& field, const PosteriorField& candidate,
                         const NormalizedDensity& marginal, double coverage = 0.95);

/// Fits log(value) against log(n) (values clamped below at kValueFloor).
/// Needs >= 3 entries spanning >= 2 decades of n; throws InsufficientData otherwise.
Verdict convergence_verdict(const DiagnosticSeries& series);

}  // namespace mplab
