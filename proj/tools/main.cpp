#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mplab/errors.hpp"
#include "runner.hpp"

namespace {

constexpr int kConfigExit = 2;
constexpr int kNumericalExit = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid diagnostics for improper-prior posterior limits and the marginalization paradox"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "Print the registered scenarios");
  auto* run = app.add_subcommand("run", "Run a scenario and write report.csv / report.json");

  std::string config_file;
  mplab::runner::Settings flags;
  run->add_option("--config", config_file, "key = value file; flags override it");
  const auto flag = [&](const std::string& name, const std::string& help) {
    run->add_option_function<std::string>("--" + name, [&flags, name](const std::string& v) { flags[name] = v; }, help);
  };
  flag("scenario", "stone, translation, scale or exp-ratio");
  flag("a", "Exponent of the improper prior e^{a theta} (stone)");
  flag("n-list", "Comma-separated taper indices, strictly increasing");
  flag("coverage", "Central coverage of the local-Bayes region");
  flag("grid-points", "Minimum grid nodes per axis");
  flag("theta-range", "theta grid bounds 'lo,hi'");
  flag("x-range", "x grid bounds 'lo,hi'");
  flag("out", "Output directory");
  flag("format", "csv, json or both");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  if (*list) {
    std::cout << mplab::runner::list_scenarios();
    return 0;
  }

  try {
    mplab::runner::RunConfig config;
    if (!config_file.empty()) mplab::runner::apply(mplab::runner::read_config_file(config_file), config);
    mplab::runner::apply(flags, config);
    if (config.scenario.empty()) throw mplab::ConfigError("no scenario given (--scenario)");
    const auto report = mplab::runner::run(config);
    mplab::runner::write_reports(report, config.output_dir, config.format);
  } catch (const mplab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalExit;
  }
  return 0;
}
