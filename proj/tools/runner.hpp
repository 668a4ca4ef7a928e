#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mplab/limit_scenario.hpp"
#include "mplab/mp_harness.hpp"

namespace mplab::runner {

enum class Format { csv, json, both };

struct RunConfig {
  std::string scenario;
  double a = 1.0;
  std::vector<double> n_list{1.0, 10.0, 100.0, 1000.0};
  double coverage = 0.95;
  std::optional<std::size_t> grid_points;  // limit scenarios: theta/x nodes; exp-ratio: z/zeta nodes
  std::optional<Range> theta_range;
  std::optional<Range> x_range;
  std::filesystem::path output_dir = ".";
  Format format = Format::both;
};

/// Settings keyed by long flag name without dashes, e.g. "n-list".
using Settings = std::map<std::string, std::string>;

/// Reads `key = value` lines; blank lines and lines starting with '#' are skipped.
Settings read_config_file(const std::filesystem::path& path);

/// Applies settings on top of `config`. Throws ConfigError on unknown keys
/// or malformed values.
void apply(const Settings& settings, RunConfig& config);

void validate(const RunConfig& config);

std::vector<double> parse_list(std::string_view text);

struct SeriesVerdict {
  std::string name;
  std::optional<Verdict> verdict;
};

struct RunReport {
  std::string scenario;
  std::vector<LimitRow> rows;
  std::vector<SeriesVerdict> verdicts;
  std::optional<mp::MPReport> mp;
  double structure_tol = 0.0;
  double compatibility_tol = 0.0;
};

RunReport run(const RunConfig& config);

std::string to_csv(const RunReport& report);
std::string to_json(const RunReport& report);

/// Writes report.csv and/or report.json into the directory, creating it.
void write_reports(const RunReport& report, const std::filesystem::path& dir, Format format);

std::string list_scenarios();

}  // namespace mplab::runner
