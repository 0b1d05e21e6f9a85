#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cslsim/cli.hpp"
#include "cslsim/report_io.hpp"
#include "csl/bounds.hpp"
#include "csl/ensemble.hpp"
#include "support/oracles.hpp"

namespace cslsim {
namespace {

struct Captured {
  int code;
  std::string out;
  std::string err;
};

Captured invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

CsvDocument csv_of(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

TEST(ParseArgs, EnsembleExample) {
  const std::vector<std::string> args{"ensemble", "--p0", "0.3", "--lambda", "1e-2", "--n", "10000", "--seed", "42"};
  const RunConfig cfg = parse_args(args);
  EXPECT_EQ(cfg.command, Command::Ensemble);
  EXPECT_EQ(cfg.dynamics.p0, 0.3);
  EXPECT_EQ(cfg.dynamics.lambda, 1e-2);
  EXPECT_EQ(cfg.dynamics.n, 10000u);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.format, Format::Csv);
  // Derived defaults: lambda deltaM^2 t_final = 20 with 2000 steps.
  EXPECT_DOUBLE_EQ(cfg.dynamics.dt, 1.0);
  EXPECT_DOUBLE_EQ(cfg.dynamics.t_final, 2000.0);
  EXPECT_EQ(cfg.dynamics.sample_every, 50u);
}

TEST(ParseArgs, BoundsJson) {
  const std::vector<std::string> args{"bounds", "--format", "json"};
  const RunConfig cfg = parse_args(args);
  EXPECT_EQ(cfg.command, Command::Bounds);
  EXPECT_EQ(cfg.format, Format::Json);
  EXPECT_EQ(cfg.seed, kDefaultSeed);
}

TEST(ParseArgs, UsageErrorsNameTheFlag) {
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases{
      {{"ensemble", "--p0", "1.5"}, "--p0"},
      {{"ensemble", "--p0", "-0.1"}, "--p0"},
      {{"ensemble", "--epsilon", "0.7"}, "--epsilon"},
      {{"ensemble", "--n", "0"}, "--n"},
      {{"trajectory", "--lambda", "0"}, "--dt"},
      {{"trajectory", "--lambda", "-1"}, "--lambda"},
      {{"ruin", "--a", "0", "--b", "0"}, "--a"},
      {{"ruin", "--a", "-2"}, "--a"},
      {{"bounds", "--format", "xml"}, "--format"},
      {{"bounds", "--threads", "0"}, "--threads"},
      {{"heating", "--mass-kg", "0"}, "--mass-kg"},
      {{"bounds", "--bogus", "1"}, "--bogus"},
  };
  for (const auto& [args, flag] : cases) {
    try {
      parse_args(args);
      ADD_FAILURE() << "accepted " << args[0] << ' ' << args[1];
    } catch (const UsageError& e) {
      EXPECT_EQ(e.exit_code(), 2);
      EXPECT_NE(std::string(e.what()).find(flag), std::string::npos) << e.what();
    }
  }
}

TEST(ParseArgs, MissingOrUnknownCommand) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"simulate"}).code, 2);
  EXPECT_EQ(invoke({"bounds", "extra"}).code, 2);
}

TEST(ParseArgs, HelpListsEveryCommandWithDefaults) {
  const Captured r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  for (const char* cmd : {"trajectory", "ensemble", "ruin", "bounds", "collapse-time", "heating"}) {
    EXPECT_NE(r.out.find(cmd), std::string::npos) << cmd;
  }
  EXPECT_NE(r.out.find("[20240611]"), std::string::npos);
  EXPECT_NE(r.out.find("[0.3]"), std::string::npos);
  EXPECT_EQ(invoke({"ruin", "--help"}).code, 0);
}

TEST(Execute, BoundsTable) {
  const Captured r = invoke({"bounds"});
  ASSERT_EQ(r.code, 0) << r.err;
  const CsvDocument doc = csv_of(r.out);
  ASSERT_EQ(doc.rows.size(), 8u);
  const std::vector<int> distances{13, 14, 6, 18, 9, 17, 8, 15};
  const auto rows = bounds_from(doc);
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].orders_above_conventional, distances[i]);
  EXPECT_EQ(rows, csl::bounds_table());
  EXPECT_EQ(doc.meta.at("schema_version"), "1");
  EXPECT_EQ(nlohmann::json::parse(doc.meta.at("config")).at("seed"), kDefaultSeed);
}

TEST(Execute, BoundsJsonRoundTrip) {
  const Captured r = invoke({"bounds", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("schema_version"), kSchemaVersion);
  EXPECT_EQ(j.at("command"), "bounds");
  EXPECT_EQ(bounds_from(j.at("result")), csl::bounds_table());
}

TEST(Execute, EnsembleBornFrequency) {
  const Captured r =
      invoke({"ensemble", "--p0", "0.3", "--lambda", "1e-2", "--n", "10000", "--seed", "42"});
  ASSERT_EQ(r.code, 0) << r.err;
  const CsvDocument doc = csv_of(r.out);
  const double sigma = csl::testing::binomial_sigma(0.3, 10000);
  EXPECT_LT(std::abs(parse_double(doc.meta.at("frequency_1")) - 0.3), 3.0 * sigma);
  EXPECT_EQ(doc.meta.at("total"), "10000");
  EXPECT_LT(parse_double(doc.meta.at("undecided_fraction")), 0.01);
  EXPECT_LT(parse_double(doc.meta.at("martingale_max_z")), 3.0);
  const auto cfg = nlohmann::json::parse(doc.meta.at("config"));
  EXPECT_EQ(cfg.at("seed"), 42);
  EXPECT_EQ(cfg.at("p0"), 0.3);
}

TEST(Execute, RuinWithinThreeSigma) {
  const Captured r = invoke({"ruin", "--a", "3", "--b", "1", "--n", "10000"});
  ASSERT_EQ(r.code, 0);
  const CsvDocument doc = csv_of(r.out);
  ASSERT_EQ(doc.rows.size(), 1u);
  const double freq = parse_double(doc.rows[0][4]);
  EXPECT_LT(std::abs(freq - 0.75), 3.0 * csl::testing::binomial_sigma(0.75, 10000));
  EXPECT_NEAR(parse_double(doc.rows[0][5]), 0.75, 1e-12);
}

TEST(Execute, ScalarCommands) {
  const CsvDocument ct = csv_of(invoke({"collapse-time"}).out);
  ASSERT_EQ(ct.rows.size(), 1u);
  EXPECT_EQ(parse_double(ct.rows[0][4]), 1e-17);
  EXPECT_EQ(ct.rows[0][6], "compatible");
  const CsvDocument h = csv_of(invoke({"heating", "--lambda", "2e-17"}).out);
  ASSERT_EQ(h.rows.size(), 1u);
  EXPECT_NEAR(parse_double(h.rows[0][3]), 2.0 * 4.98673e-45, 2e-49);
}

TEST(Execute, TrajectoryRoundTripsBothFormats) {
  const std::vector<std::string> base{"trajectory", "--p0", "0.4", "--seed", "9"};
  auto csv_args = base;
  const CsvDocument doc = csv_of(invoke(csv_args).out);
  auto json_args = base;
  json_args.insert(json_args.end(), {"--format", "json"});
  const auto j = nlohmann::json::parse(invoke(json_args).out);
  const auto from_csv = trajectory_samples_from(doc);
  const auto from_json = trajectory_samples_from(j.at("result"));
  ASSERT_FALSE(from_csv.empty());
  EXPECT_EQ(from_csv, from_json);
  EXPECT_EQ(from_csv.front().time, 0.0);
  EXPECT_NEAR(from_csv.front().probabilities[1], 0.4, 1e-15);
  EXPECT_EQ(doc.header.front(), "time");
  EXPECT_EQ(doc.header.back(), "variance_M");
}

TEST(Execute, RerunsAndThreadCountsAreByteIdentical) {
  const std::vector<std::vector<std::string>> commands{
      {"ensemble", "--n", "300", "--p0", "0.6"},
      {"ruin", "--a", "4", "--b", "7", "--n", "3000"},
  };
  for (const auto& cmd : commands) {
    auto one = cmd;
    one.insert(one.end(), {"--threads", "1"});
    auto four = cmd;
    four.insert(four.end(), {"--threads", "4"});
    const std::string a = invoke(one).out;
    EXPECT_EQ(a, invoke(one).out);
    EXPECT_EQ(a, invoke(four).out) << cmd[0];
  }
}

TEST(Execute, WritesToOutPath) {
  const auto path = std::filesystem::temp_directory_path() / "cslsim_cli_test_bounds.json";
  std::filesystem::remove(path);
  const Captured r = invoke({"bounds", "--format", "json", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j.at("result").at("bounds").size(), 8u);
  std::filesystem::remove(path);
}

TEST(Execute, RuntimeErrorExitsOneWithOneLine) {
  const Captured r = invoke({"bounds", "--out", "/nonexistent-dir/x/y.csv"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
  EXPECT_EQ(r.err.rfind("cslsim: error:", 0), 0u);
}

}  // namespace
}  // namespace cslsim
