#include "runner.hpp"

#include <array>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mplab/errors.hpp"

namespace mplab::runner {

namespace {

constexpr std::size_t kDefaultLimitPoints = 4001;
constexpr std::size_t kDefaultRatioPoints = 801;
constexpr std::array<const char*, 4> kSeriesNames{"D_pt_x0", "D_prob_pt", "D_prob_prob", "local_bayes"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view text, std::string_view what) {
  const std::string s(trim(text));
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError(std::string(what) + ": not a finite number: '" + s + "'");
  }
  return v;
}

std::size_t parse_count(std::string_view text, std::string_view what) {
  const std::string s(trim(text));
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || v < 2) {
    throw ConfigError(std::string(what) + ": expected an integer >= 2, got '" + s + "'");
  }
  return static_cast<std::size_t>(v);
}

Range parse_range(std::string_view text, std::string_view what) {
  const auto values = parse_list(text);
  if (values.size() != 2 || !(values[0] < values[1])) {
    throw ConfigError(std::string(what) + ": expected 'lo,hi' with lo < hi");
  }
  return {values[0], values[1]};
}

Format parse_format(std::string_view text) {
  const auto s = trim(text);
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  if (s == "both") return Format::both;
  throw ConfigError("format: expected csv, json or both, got '" + std::string(s) + "'");
}

bool is_limit_scenario(std::string_view name) {
  return name == "stone" || name == "translation" || name == "scale";
}

LimitScenario limit_scenario(const RunConfig& config) {
  if (config.scenario == "stone") return stone_limit_scenario(config.a);
  if (config.scenario == "translation") return translation_limit_scenario();
  return scale_limit_scenario();
}

std::string format_value(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

RunReport run_limit(const RunConfig& config) {
  LimitRunOptions options;
  options.coverage = config.coverage;
  options.grid_points = config.grid_points.value_or(kDefaultLimitPoints);
  options.theta_range = config.theta_range;
  options.x_range = config.x_range;
  auto result = run_limit_scenario(limit_scenario(config), config.n_list, options);

  RunReport report;
  report.scenario = config.scenario;
  report.rows = std::move(result.rows);
  for (std::size_t i = 0; i < result.series.size(); ++i) {
    report.verdicts.push_back({kSeriesNames[i], result.series[i].verdict});
  }
  return report;
}

RunReport run_ratio(const RunConfig& config) {
  const auto scenario = mp::make_scenario(config.scenario, config.grid_points.value_or(kDefaultRatioPoints));
  RunReport report;
  report.scenario = config.scenario;
  report.mp = mp::run_mp_scenario(scenario);
  report.structure_tol = scenario.structure_tol;
  report.compatibility_tol = scenario.compatibility_tol;
  return report;
}

}  // namespace

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(parse_real(piece, "list"));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Settings read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  Settings settings;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(number) + ": expected key = value");
    }
    settings[std::string(trim(body.substr(0, eq)))] = std::string(trim(body.substr(eq + 1)));
  }
  return settings;
}

void apply(const Settings& settings, RunConfig& config) {
  for (const auto& [key, value] : settings) {
    if (key == "scenario") {
      config.scenario = value;
    } else if (key == "a") {
      config.a = parse_real(value, "a");
    } else if (key == "n-list") {
      config.n_list = parse_list(value);
    } else if (key == "coverage") {
      config.coverage = parse_real(value, "coverage");
    } else if (key == "grid-points") {
      config.grid_points = parse_count(value, "grid-points");
    } else if (key == "theta-range") {
      config.theta_range = parse_range(value, "theta-range");
    } else if (key == "x-range") {
      config.x_range = parse_range(value, "x-range");
    } else if (key == "out") {
      config.output_dir = value;
    } else if (key == "format") {
      config.format = parse_format(value);
    } else {
      throw ConfigError("unknown setting '" + key + "'");
    }
  }
}

void validate(const RunConfig& config) {
  if (config.scenario == "exp-ratio") return;
  if (!is_limit_scenario(config.scenario)) {
    throw ConfigError("unknown scenario '" + config.scenario + "' (try 'list')");
  }
  if (config.n_list.empty()) throw ConfigError("n-list is empty");
  for (std::size_t i = 0; i < config.n_list.size(); ++i) {
    if (!(config.n_list[i] > 0.0)) throw ConfigError("n-list entries must be positive");
    if (i > 0 && !(config.n_list[i] > config.n_list[i - 1])) throw ConfigError("n-list must be strictly increasing");
  }
  if (!(config.coverage > 0.0 && config.coverage < 1.0)) throw ConfigError("coverage must lie in (0, 1)");
}

RunReport run(const RunConfig& config) {
  validate(config);
  return is_limit_scenario(config.scenario) ? run_limit(config) : run_ratio(config);
}

std::string to_csv(const RunReport& report) {
  std::ostringstream out;
  if (const auto& mp = report.mp) {
    const auto pass = [](bool ok) { return ok ? "pass" : "fail"; };
    out << "check,value,verdict\n";
    out << "z_marginal_variation," << format_value(mp->z_marginal_variation) << ','
        << pass(mp->z_marginal_variation <= report.structure_tol) << '\n';
    out << "y_independence_variation," << format_value(mp->y_independence_variation) << ','
        << pass(mp->y_independence_variation <= report.structure_tol) << '\n';
    out << "compatibility_residual_b1," << format_value(mp->compatibility_residual_b1) << ','
        << (mp->compatibility_residual_b1 > 10.0 * report.compatibility_tol ? "incompatible" : "compatible") << '\n';
    out << "compatibility_residual_b2," << format_value(mp->compatibility_residual_b2) << ','
        << (mp->compatibility_residual_b2 > 10.0 * report.compatibility_tol ? "incompatible" : "compatible") << '\n';
    out << "route_l1," << format_value(mp->route_l1) << ",\n";
    out << "verdict,," << mp::to_string(mp->verdict) << '\n';
    return out.str();
  }
  out << "n,D_pt_x0,D_prob_pt,D_prob_prob,local_bayes\n";
  for (const auto& r : report.rows) {
    out << format_value(r.n) << ',' << format_value(r.d_pt_x0) << ',' << format_value(r.d_prob_pt) << ','
        << format_value(r.d_prob_prob) << ',' << format_value(r.local_bayes) << '\n';
  }
  return out.str();
}

std::string to_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["scenario"] = report.scenario;
  if (const auto& mp = report.mp) {
    j["z_marginal_variation"] = mp->z_marginal_variation;
    j["y_independence_variation"] = mp->y_independence_variation;
    j["compatibility_residual_b1"] = mp->compatibility_residual_b1;
    j["compatibility_residual_b2"] = mp->compatibility_residual_b2;
    j["route_l1"] = mp->route_l1;
    j["verdict"] = std::string(mp::to_string(mp->verdict));
    return j.dump(2) + "\n";
  }
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"n", r.n},
                    {"D_pt_x0", r.d_pt_x0},
                    {"D_prob_pt", r.d_prob_pt},
                    {"D_prob_prob", r.d_prob_prob},
                    {"local_bayes", r.local_bayes}});
  }
  j["rows"] = std::move(rows);
  auto verdicts = nlohmann::ordered_json::object();
  for (const auto& s : report.verdicts) {
    if (s.verdict) {
      verdicts[s.name] = {{"status", std::string(to_string(s.verdict->status))},
                          {"slope", s.verdict->slope},
                          {"final_value", s.verdict->final_value}};
    } else {
      verdicts[s.name] = {{"status", "insufficient_data"}};
    }
  }
  j["verdicts"] = std::move(verdicts);
  return j.dump(2) + "\n";
}

void write_reports(const RunReport& report, const std::filesystem::path& dir, Format format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
  const auto write = [&](const char* name, const std::string& body) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << body;
    if (!out) throw ConfigError("cannot write " + path.string());
  };
  if (format != Format::json) write("report.csv", to_csv(report));
  if (format != Format::csv) write("report.json", to_json(report));
}

std::string list_scenarios() {
  std::ostringstream out;
  const auto line = [&](std::string_view name, std::string_view description) {
    out << name;
    for (std::size_t pad = name.size(); pad < 13; ++pad) out << ' ';
    out << description << '\n';
  };
  line("stone", "N(theta, 1) with the improper prior e^{a theta} and tapers exp(a theta - theta^2/2n)");
  line("translation", "N(theta, 1) with a uniform prior and N(0, n) tapers");
  line("scale", "N(0, sigma^2) with the prior d sigma / sigma, tapered in log sigma");
  line("exp-ratio", "marginalization paradox check for the exponential-ratio model");
  return out.str();
}

}  // namespace mplab::runner
