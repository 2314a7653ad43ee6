#include "mlsim/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "mlsim/error.hpp"

namespace mlsim {

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "laplace-check", "ml-moments", "overshoot",   "holder",        "y-motion",
      "selfsim",       "stat-incr",  "dk-chain",    "dk-boole",      "t-inf-law",
      "tail-marginal", "norms",      "fclt"};
  return names;
}

ExperimentConfig default_config(const std::string& experiment) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), experiment) == names.end())
    throw ParameterError("unknown experiment '" + experiment + "'");
  ExperimentConfig c;
  c.experiment = experiment;
  if (experiment == "laplace-check") {
    c.betas = {0.3, 0.5, 0.8};
    c.thetas = {0.5, 1.0, 2.0};
    c.draws = 1000000;
  } else if (experiment == "ml-moments") {
    c.betas = {0.3, 0.5, 0.8};
    c.replicates = 10000;
  } else if (experiment == "overshoot") {
    c.draws = 100000;
    c.replicates = 20000;
    c.u_step = 0.2;
  } else if (experiment == "holder") {
    c.n_list = {64, 256};
    c.replicates = 1000;
  } else if (experiment == "y-motion") {
    c.replicates = 4000;
    c.draws = 1000000;
    for (int j = 0; j <= 100; ++j) c.t_grid.push_back(j / 100.0);
  } else if (experiment == "selfsim") {
    c.alphas = {0.8, 1.5, 1.5};
    c.betas = {0.5, 0.5, 0.3};
    c.scales = {1.0, 2.0, 4.0};
    c.replicates = 4000;
  } else if (experiment == "stat-incr") {
    c.alphas = {0.8, 1.5, 1.5};
    c.betas = {0.5, 0.5, 0.3};
    c.t_grid = {0.0, 0.5, 1.0};
    c.replicates = 2000;
  } else if (experiment == "dk-chain") {
    c.n_list = {1024, 8192, 65536};
    c.replicates = 4000;
    c.trend_replicates = 200000;
    c.draws = 1000000;
  } else if (experiment == "dk-boole") {
    c.n_list = {10000, 100000, 1000000};
    c.replicates = 2000;
    c.draws = 1000000;
  } else if (experiment == "t-inf-law") {
    c.n_list = {1024, 8192, 65536};
    c.replicates = 1000000;
  } else if (experiment == "tail-marginal") {
    c.alpha = 0.8;
    c.draws = 100000;
  } else if (experiment == "norms") {
    for (std::size_t n = 1024; n <= 65536; n *= 2) c.n_list.push_back(n);
    c.replicates = 100000;
    c.draws = 1000000;
  } else if (experiment == "fclt") {
    c.alpha = 0.8;
    c.variant = Variant::positive;
    c.n_list = {512, 4096, 32768};
    c.t_grid = {0.5, 1.0};
    c.replicates = 4000;
  }
  return c;
}

void validate(const ExperimentConfig& c) {
  default_config(c.experiment);  // known name
  require(c.alpha > 0.0 && c.alpha < 2.0, "alpha must lie in (0,2)");
  require(c.beta > 0.0 && c.beta < 1.0, "beta must lie in (0,1)");
  require(c.eps > 0.0 && c.eps < 0.25, "eps must lie in (0,1/4)");
  require(c.u_step >= 0.0, "u_step must be non-negative");
  require(c.shift > 0.0, "shift must be positive");
  require(c.L >= 1, "L must be >= 1");
  require(c.series_length == 0 || c.series_length >= 100, "series_length must be >= 100");
  require(c.variant == Variant::symmetric || c.alpha < 1.0,
          "the positive variant needs alpha < 1");
  for (double b : c.betas) require(b > 0.0 && b < 1.0, "betas must lie in (0,1)");
  for (double a : c.alphas) require(a > 0.0 && a < 2.0, "alphas must lie in (0,2)");
  for (double t : c.thetas) require(t > 0.0, "thetas must be positive");
  for (double s : c.scales) require(s > 0.0, "scales must be positive");
  for (double t : c.t_grid) require(t >= 0.0, "t_grid must be non-negative");
  require(std::is_sorted(c.t_grid.begin(), c.t_grid.end()), "t_grid must be sorted");
  require(std::is_sorted(c.n_list.begin(), c.n_list.end()), "n_list must be sorted");
  for (std::size_t n : c.n_list) require(n >= 1, "n_list entries must be >= 1");
  require(c.alphas.empty() || c.alphas.size() == c.betas.size(),
          "alphas and betas must have equal length");
}

namespace {

const std::set<std::string> kTop = {"experiment", "seed", "output", "model", "sizes", "sweep"};
const std::set<std::string> kModel = {"alpha", "beta", "variant", "eps"};
const std::set<std::string> kSizes = {"n_list", "t_grid", "replicates", "trend_replicates",
                                      "draws", "series_length", "u_step", "shift", "L"};
const std::set<std::string> kSweep = {"betas", "thetas", "alphas", "scales"};

void check_keys(const YAML::Node& node, const std::set<std::string>& allowed, const std::string& where) {
  if (!node) return;
  require(node.IsMap(), where + " must be a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    require(allowed.count(key) == 1, "unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read(const YAML::Node& node, const char* key, T& out) {
  if (!node || !node[key]) return;
  try {
    out = node[key].as<T>();
  } catch (const YAML::Exception& e) {
    throw ParameterError(std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& experiment) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ParameterError(std::string("config is not valid YAML: ") + e.what());
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  check_keys(root, kTop, "config");
  check_keys(root["model"], kModel, "model");
  check_keys(root["sizes"], kSizes, "sizes");
  check_keys(root["sweep"], kSweep, "sweep");

  std::string name = experiment;
  if (root["experiment"]) {
    const auto named = root["experiment"].as<std::string>();
    require(name.empty() || name == named,
            "config names experiment '" + named + "' but '" + name + "' was requested");
    name = named;
  }
  require(!name.empty(), "no experiment named");
  ExperimentConfig c = default_config(name);

  read(root, "seed", c.master_seed);
  read(root, "output", c.output_dir);
  const YAML::Node model = root["model"];
  read(model, "alpha", c.alpha);
  read(model, "beta", c.beta);
  read(model, "eps", c.eps);
  if (model && model["variant"]) c.variant = parse_variant(model["variant"].as<std::string>());
  const YAML::Node sizes = root["sizes"];
  read(sizes, "n_list", c.n_list);
  read(sizes, "t_grid", c.t_grid);
  read(sizes, "replicates", c.replicates);
  read(sizes, "trend_replicates", c.trend_replicates);
  read(sizes, "draws", c.draws);
  read(sizes, "series_length", c.series_length);
  read(sizes, "u_step", c.u_step);
  read(sizes, "shift", c.shift);
  read(sizes, "L", c.L);
  const YAML::Node sweep = root["sweep"];
  read(sweep, "betas", c.betas);
  read(sweep, "thetas", c.thetas);
  read(sweep, "alphas", c.alphas);
  read(sweep, "scales", c.scales);
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path, const std::string& experiment) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), experiment);
}

std::string dump_config(const ExperimentConfig& c) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "experiment" << YAML::Value << c.experiment;
  out << YAML::Key << "seed" << YAML::Value << c.master_seed;
  out << YAML::Key << "output" << YAML::Value << c.output_dir;

  out << YAML::Key << "model" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "alpha" << YAML::Value << c.alpha;
  out << YAML::Key << "beta" << YAML::Value << c.beta;
  out << YAML::Key << "variant" << YAML::Value << std::string(to_string(c.variant));
  out << YAML::Key << "eps" << YAML::Value << c.eps;
  out << YAML::EndMap;

  out << YAML::Key << "sizes" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "n_list" << YAML::Value << YAML::Flow << c.n_list;
  out << YAML::Key << "t_grid" << YAML::Value << YAML::Flow << c.t_grid;
  out << YAML::Key << "replicates" << YAML::Value << c.replicates;
  out << YAML::Key << "trend_replicates" << YAML::Value << c.trend_replicates;
  out << YAML::Key << "draws" << YAML::Value << c.draws;
  out << YAML::Key << "series_length" << YAML::Value << c.series_length;
  out << YAML::Key << "u_step" << YAML::Value << c.u_step;
  out << YAML::Key << "shift" << YAML::Value << c.shift;
  out << YAML::Key << "L" << YAML::Value << c.L;
  out << YAML::EndMap;

  out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "betas" << YAML::Value << YAML::Flow << c.betas;
  out << YAML::Key << "thetas" << YAML::Value << YAML::Flow << c.thetas;
  out << YAML::Key << "alphas" << YAML::Value << YAML::Flow << c.alphas;
  out << YAML::Key << "scales" << YAML::Value << YAML::Flow << c.scales;
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace mlsim
