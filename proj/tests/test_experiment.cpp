#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "core/experiment.hpp"

using gir::ConfigError;
using gir::ExperimentConfig;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("minimal config gets per-kind defaults") {
  ExperimentConfig cfg =
      ExperimentConfig::parse("kind = invariance-check\nseed = 42\n");
  CHECK(cfg.kind() == "invariance-check");
  CHECK(cfg.seed() == 42);
  CHECK(cfg.get_int("m") == 10);
  CHECK(cfg.get_int("n") == 20);
  CHECK(cfg.get_double("epsilon") == 0.1);
  CHECK(cfg.get_string("output") == "invariance-check.csv");
}

TEST_CASE("unknown keys are rejected with their line number") {
  try {
    ExperimentConfig::parse("kind = invariance-check\nseed = 1\ntemplats = 5\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line == 3);
    CHECK(std::string(e.what()).find("templats") != std::string::npos);
  }
}

TEST_CASE("malformed lines, duplicates, and missing keys") {
  CHECK_THROWS_AS(ExperimentConfig::parse("kind = invariance-check\nseed 1\n"),
                  ConfigError);
  CHECK_THROWS_AS(
      ExperimentConfig::parse("kind = invariance-check\nseed = 1\nseed = 2\n"),
      ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("kind = invariance-check\n"),
                  ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("seed = 1\n"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("kind = no-such-kind\nseed = 1\n"),
                  ConfigError);
  CHECK_THROWS_AS(
      ExperimentConfig::parse("kind = invariance-check\nseed = soon\n"),
      ConfigError);
}

TEST_CASE("comments and section headers are honored") {
  ExperimentConfig cfg = ExperimentConfig::parse(
      "# a comment\nkind = bounds-report  # trailing comment\nseed = 9\n");
  CHECK(cfg.kind() == "bounds-report");
  CHECK(cfg.seed() == 9);
}

TEST_CASE("canonical form round-trips to an equal config") {
  ExperimentConfig cfg = ExperimentConfig::parse(
      "kind = xperm-learning-curve\nseed = 5\nm = 12\nsizes = 100,200\n");
  ExperimentConfig again = ExperimentConfig::parse(cfg.canonical_text());
  CHECK(cfg == again);
  CHECK(cfg.hash() == again.hash());
}

TEST_CASE("typed getters validate their values") {
  ExperimentConfig cfg = ExperimentConfig::parse(
      "kind = xperm-learning-curve\nseed = 5\nsizes = 100,200,300\n"
      "methods = phi,bow\ncore_only = 1\n");
  CHECK(cfg.get_int_list("sizes") == std::vector<std::int64_t>{100, 200, 300});
  CHECK(cfg.get_string_list("methods") == std::vector<std::string>{"phi", "bow"});
  CHECK(cfg.get_bool("core_only"));
  CHECK_THROWS_AS(cfg.get_int("methods"), ConfigError);
  CHECK_THROWS_AS(cfg.get_string("no_such_key"), std::out_of_range);
}

TEST_CASE("bounds report runs and embeds its provenance header") {
  const std::string out = "test_bounds_report.csv";
  ExperimentConfig cfg = ExperimentConfig::parse(
      "kind = bounds-report\nseed = 3\noutput = " + out + "\n");
  gir::run_experiment(cfg);
  const std::string text = slurp(out);
  std::remove(out.c_str());
  CHECK(text.find("bound,inputs,value") != std::string::npos);
  CHECK(text.find("delta1") != std::string::npos);
  CHECK(text.find("theorem3_risk") != std::string::npos);
}

TEST_CASE("identical configs produce bit-identical outputs across workers") {
  const std::string out1 = "test_run_a.csv";
  const std::string out2 = "test_run_b.csv";
  const std::string base =
      "kind = invariance-check\nseed = 11\npoints = 5\nm = 4\nn = 6\n";
  gir::run_experiment(
      ExperimentConfig::parse(base + "output = " + out1 + "\n"), 1);
  gir::run_experiment(
      ExperimentConfig::parse(base + "output = " + out2 + "\n"), 4);
  std::string a = slurp(out1);
  std::string b = slurp(out2);
  std::remove(out1.c_str());
  std::remove(out2.c_str());
  // outputs differ only in the echoed output path; strip header comments
  auto body = [](const std::string& s) {
    std::istringstream in(s);
    std::string line, kept;
    while (std::getline(in, line))
      if (line.empty() || line[0] != '#') kept += line + "\n";
    return kept;
  };
  CHECK(body(a) == body(b));
  CHECK(body(a).find("point_index,max_deviation") == 0);
}

TEST_CASE("invariance-check deviations are at machine precision") {
  const std::string out = "test_invariance.csv";
  gir::run_experiment(ExperimentConfig::parse(
      "kind = invariance-check\nseed = 13\npoints = 3\nm = 3\nn = 5\noutput = " +
      out + "\n"));
  std::istringstream in(slurp(out));
  std::remove(out.c_str());
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.find("point_index") == 0)
      continue;
    auto comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    CHECK(std::stod(line.substr(comma + 1)) <= 1e-12);
    ++rows;
  }
  CHECK(rows == 3);
}

TEST_CASE("group subsample sweep emits the full trial grid") {
  const std::string out = "test_subsample.csv";
  gir::run_experiment(ExperimentConfig::parse(
      "kind = group-subsample-sweep\nseed = 17\ngroup_sizes = 5,120\n"
      "trials = 2\nm = 4\nn = 5\ntrain_size = 100\ntest_size = 200\noutput = " +
      out + "\n"));
  std::istringstream in(slurp(out));
  std::remove(out.c_str());
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.find("group_size") == 0) continue;
    ++rows;
    std::istringstream fields(line);
    std::string gsize, trial, acc;
    REQUIRE(std::getline(fields, gsize, ','));
    REQUIRE(std::getline(fields, trial, ','));
    REQUIRE(std::getline(fields, acc, ','));
    const double a = std::stod(acc);
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
  }
  CHECK(rows == 4);
}

TEST_CASE("worker count env var parsing") {
  CHECK(gir::env_worker_count() >= 1);
}
