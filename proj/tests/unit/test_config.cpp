#include <charconv>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>

#include "doctest.h"
#include "mlsim/config.hpp"
#include "mlsim/error.hpp"
#include "mlsim/experiments.hpp"
#include "mlsim/random.hpp"
#include "mlsim/report.hpp"

using namespace mlsim;

TEST_CASE("defaults round-trip through YAML") {
  for (const std::string& name : experiment_names()) {
    const ExperimentConfig c = default_config(name);
    CHECK_NOTHROW(validate(c));
    CHECK(parse_config(dump_config(c)) == c);
  }
}

TEST_CASE("shipped configs parse and round-trip") {
  namespace fs = std::filesystem;
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(MLSIM_CONFIG_DIR)) {
    if (entry.path().extension() != ".yaml") continue;
    const ExperimentConfig c = load_config(entry.path().string());
    CHECK(parse_config(dump_config(c)) == c);
    CHECK(c.master_seed == 1);
    ++seen;
  }
  CHECK(seen == 14);
}

TEST_CASE("doubles survive the round trip exactly") {
  ExperimentConfig c = default_config("fclt");
  c.t_grid = {0.1, 1.0 / 3.0, 0.7000000000000001};
  c.eps = 1.0 / 30.0;
  CHECK(parse_config(dump_config(c)) == c);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("experiment: nope\n"), ParameterError);
  CHECK_THROWS_AS(parse_config("experiment: fclt\nmodle: {}\n"), ParameterError);
  CHECK_THROWS_AS(parse_config("experiment: fclt\nsizes: {replicate: 3}\n"), ParameterError);
  CHECK_THROWS_AS(parse_config("experiment: fclt\nmodel: {alpha: 2.5}\n"), ParameterError);
  CHECK_THROWS_AS(parse_config("experiment: fclt\nmodel: {alpha: 1.5, variant: positive}\n"), ParameterError);
  CHECK_THROWS_AS(parse_config("experiment: fclt\nmodel: {variant: skewed}\n"), ParameterError);
  CHECK_THROWS_AS(parse_config("experiment: fclt\nsizes: {t_grid: [1, 0.5]}\n"), ParameterError);
  CHECK_THROWS_AS(parse_config("experiment: fclt\nsizes: {replicates: many}\n"), ParameterError);
  CHECK_THROWS_AS(parse_config("experiment: [\n"), ParameterError);
  CHECK_THROWS_AS(parse_config("seed: 3\n"), ParameterError);
  CHECK_THROWS_AS(parse_config("experiment: fclt\n", "norms"), ParameterError);
  CHECK(parse_config("seed: 3\n", "norms").master_seed == 3);
  CHECK_THROWS_AS(load_config("/nonexistent/config.yaml"), ParameterError);
}

TEST_CASE("CSV cells keep 17 significant digits") {
  Table t("demo", {"x", "n", "label"});
  const double x = 0.1 + 0.2;
  t.add({x, std::int64_t{42}, std::string("a")});
  CHECK_THROWS_AS(t.add({1.0}), ParameterError);
  const std::string csv = render_csv(t);
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "x,n,label");
  const std::string first = row.substr(0, row.find(','));
  double back = 0.0;
  std::from_chars(first.data(), first.data() + first.size(), back);
  CHECK(back == x);
  CHECK(row.substr(row.find(',')) == ",42,a");
}

TEST_CASE("report contents") {
  ExperimentConfig c = parse_config("seed: 3\nsweep: {betas: [0.5], thetas: [1]}\nsizes: {draws: 8192}\n",
                                    "laplace-check");
  const ExperimentResult r = run_experiment(c, 1);
  const Json report = Json::parse(render_report(c, r));
  CHECK(report["experiment"] == "laplace-check");
  CHECK(report["version"] == version_string());
  CHECK(report["seed_rule"] == kSeedRule);
  CHECK(report["config"]["seed"] == 3);
  CHECK_FALSE(report["config"].contains("workers"));
  CHECK_FALSE(report["config"].contains("output"));
  CHECK(report["status"] == (r.passed() ? "pass" : "fail"));
  CHECK_FALSE(report["checks"].empty());
  const Json failure = Json::parse(failure_record(r));
  CHECK(failure["experiment"] == "laplace-check");
}

TEST_CASE("results do not depend on the worker count") {
  const ExperimentConfig c =
      parse_config("sweep: {betas: [0.3, 0.8], thetas: [1, 2]}\nsizes: {draws: 10000}\n", "laplace-check");
  const std::string one = render_report(c, run_experiment(c, 1));
  const std::string four = render_report(c, run_experiment(c, 4));
  CHECK(one == four);
}
