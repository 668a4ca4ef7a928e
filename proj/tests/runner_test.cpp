#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "mplab/errors.hpp"
#include "runner.hpp"

namespace fs = std::filesystem;
using namespace mplab;
using namespace mplab::runner;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("mplab_runner_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli(const std::string& args, const fs::path& stdout_file = "/dev/null") {
  const std::string cmd = std::string(MPLAB_CLI) + " " + args + " > " + stdout_file.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("settings parsing") {
  CHECK(parse_list("1,10,100") == std::vector<double>{1, 10, 100});
  CHECK(parse_list(" 2.5 ") == std::vector<double>{2.5});
  CHECK_THROWS_AS(parse_list("1,,3"), ConfigError);
  CHECK_THROWS_AS(parse_list("1,x"), ConfigError);
  CHECK_THROWS_AS(parse_list("nan"), ConfigError);

  RunConfig c;
  apply({{"scenario", "stone"}, {"a", "0.5"}, {"n-list", "1,2"}, {"grid-points", "101"}, {"format", "csv"},
         {"theta-range", "-3,4"}},
        c);
  CHECK(c.scenario == "stone");
  CHECK(c.a == 0.5);
  CHECK(c.n_list == std::vector<double>{1, 2});
  CHECK(c.grid_points == 101u);
  CHECK(c.format == Format::csv);
  CHECK(c.theta_range->lo == -3.0);
  CHECK_THROWS_AS(apply({{"bogus", "1"}}, c), ConfigError);
  CHECK_THROWS_AS(apply({{"format", "xml"}}, c), ConfigError);
  CHECK_THROWS_AS(apply({{"grid-points", "1"}}, c), ConfigError);
  CHECK_THROWS_AS(apply({{"x-range", "3,1"}}, c), ConfigError);
}

TEST_CASE("validate") {
  RunConfig c;
  c.scenario = "stone";
  CHECK_NOTHROW(validate(c));
  c.n_list = {10, 1};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.n_list = {};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.n_list = {-1, 1};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.n_list = {1, 10};
  c.coverage = 1.0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.coverage = 0.95;
  c.scenario = "nosuch";
  CHECK_THROWS_AS(run(c), ConfigError);
}

TEST_CASE("config file") {
  const auto dir = scratch("config");
  {
    std::ofstream out(dir / "run.cfg");
    out << "# stone run\nscenario = stone\n\na = 0\nn-list = 10, 100\n";
  }
  const auto s = read_config_file(dir / "run.cfg");
  CHECK(s.at("scenario") == "stone");
  CHECK(s.at("n-list") == "10, 100");
  {
    std::ofstream out(dir / "bad.cfg");
    out << "scenario stone\n";
  }
  CHECK_THROWS_AS(read_config_file(dir / "bad.cfg"), ConfigError);
  CHECK_THROWS_AS(read_config_file(dir / "missing.cfg"), ConfigError);
}

TEST_CASE("stone run: three rows, D_prob_prob strictly decreasing") {
  const auto dir = scratch("stone");
  REQUIRE(cli("run --scenario stone --a 1 --n-list 1,10,100 --out " + dir.string()) == 0);
  const auto rows = parse_csv(slurp(dir / "report.csv"));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"n", "D_pt_x0", "D_prob_pt", "D_prob_prob", "local_bayes"});
  for (std::size_t i = 2; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][3]) < std::stod(rows[i - 1][3]));
  }
  CHECK(fs::exists(dir / "report.json"));
}

TEST_CASE("a = 0 makes the two candidates identical") {
  RunConfig c;
  c.scenario = "stone";
  c.a = 0.0;
  c.n_list = {10, 100};
  const auto report = run(c);
  REQUIRE(report.rows.size() == 2);
  for (const auto& r : report.rows) CHECK(std::abs(r.d_prob_pt - r.d_prob_prob) <= 1e-10);
}

TEST_CASE("exit codes") {
  CHECK(cli("run --scenario nosuch") == 2);
  CHECK(cli("run --scenario stone --n-list 10,1") == 2);
  CHECK(cli("run --scenario stone --coverage 2") == 2);
  CHECK(cli("run") == 2);
  CHECK(cli("frobnicate") == 2);
  // a grid far too narrow for the likelihood
  CHECK(cli("run --scenario stone --n-list 1,10 --x-range -1,1 --theta-range -1,1 --out " +
            scratch("narrow").string()) == 3);
}

TEST_CASE("numerical failures name the stage") {
  RunConfig c;
  c.scenario = "stone";
  c.n_list = {1, 10};
  c.x_range = Range{-1.0, 1.0};
  c.theta_range = Range{-1.0, 1.0};
  try {
    run(c);
    FAIL("expected a numerical failure");
  } catch (const ConfigError&) {
    FAIL("not a config error");
  } catch (const Error& e) {
    const std::string what = e.what();
    CHECK(what.find("n = ") != std::string::npos);
  }
}

TEST_CASE("list") {
  const auto dir = scratch("list");
  REQUIRE(cli("list", dir / "a.txt") == 0);
  REQUIRE(cli("list", dir / "b.txt") == 0);
  const auto text = slurp(dir / "a.txt");
  CHECK(text.find("stone") != std::string::npos);
  CHECK(text.find("exp-ratio") != std::string::npos);
  CHECK(text == slurp(dir / "b.txt"));
  CHECK(text == list_scenarios());
}

TEST_CASE("flags override the config file") {
  const auto dir = scratch("override");
  {
    std::ofstream out(dir / "run.cfg");
    out << "scenario = stone\nn-list = 1,10,100\nformat = json\ngrid-points = 1001\n";
  }
  REQUIRE(cli("run --config " + (dir / "run.cfg").string() + " --format csv --n-list 1,10 --out " +
              (dir / "out").string()) == 0);
  CHECK(fs::exists(dir / "out" / "report.csv"));
  CHECK_FALSE(fs::exists(dir / "out" / "report.json"));
  CHECK(parse_csv(slurp(dir / "out" / "report.csv")).size() == 3);
}

TEST_CASE("property: reports are byte-identical across runs") {
  const auto dir = scratch("determinism");
  const std::string args = "run --scenario stone --a 1 --n-list 1,10,100 --grid-points 1001 --out ";
  REQUIRE(cli(args + (dir / "a").string()) == 0);
  REQUIRE(cli(args + (dir / "b").string()) == 0);
  CHECK(slurp(dir / "a" / "report.csv") == slurp(dir / "b" / "report.csv"));
  CHECK(slurp(dir / "a" / "report.json") == slurp(dir / "b" / "report.json"));

  RunConfig c;
  c.scenario = "translation";
  c.n_list = {1, 10, 100};
  c.grid_points = 1001;
  const auto first = run(c);
  for (int trial = 0; trial < 3; ++trial) {
    const auto again = run(c);
    CHECK(to_csv(again) == to_csv(first));
    CHECK(to_json(again) == to_json(first));
  }
}

TEST_CASE("property: CSV values round-trip") {
  RunConfig c;
  c.scenario = "stone";
  c.n_list = {1, 3, 10, 30, 100};
  c.grid_points = 1001;
  const auto report = run(c);
  const auto rows = parse_csv(to_csv(report));
  REQUIRE(rows.size() == report.rows.size() + 1);
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    const double expected[] = {r.n, r.d_pt_x0, r.d_prob_pt, r.d_prob_prob, r.local_bayes};
    for (std::size_t k = 0; k < 5; ++k) {
      const double parsed = std::stod(rows[i + 1][k]);
      CHECK(std::abs(parsed - expected[k]) <= 1e-12 * std::abs(expected[k]));
    }
  }
}

TEST_CASE("exp-ratio report") {
  RunConfig c;
  c.scenario = "exp-ratio";
  c.grid_points = 401;
  const auto report = run(c);
  REQUIRE(report.mp.has_value());
  const auto rows = parse_csv(to_csv(report));
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == std::vector<std::string>{"check", "value", "verdict"});
  CHECK(rows[3][0] == "compatibility_residual_b1");
  CHECK(std::stod(rows[3][1]) == report.mp->compatibility_residual_b1);
  CHECK(rows[6] == std::vector<std::string>{"verdict", "", "paradox_detected"});
  CHECK(to_json(report).find("\"verdict\": \"paradox_detected\"") != std::string::npos);
}
