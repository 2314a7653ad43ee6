#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mlsim/variant.hpp"

namespace mlsim {

/// One experiment run. Serialized as YAML:
///
///   experiment: fclt
///   seed: 1
///   output: out
///   model:   {alpha: 0.8, beta: 0.5, variant: positive, eps: 0.05}
///   sizes:   {n_list: [...], t_grid: [...], replicates: 4000, ...}
///   sweep:   {betas: [...], thetas: [...], alphas: [...], scales: [...]}
///
/// A zero size or step means "use the experiment's default".
struct ExperimentConfig {
  std::string experiment;
  std::uint64_t master_seed = 1;
  std::string output_dir = "out";

  double alpha = 1.5;
  double beta = 0.5;
  Variant variant = Variant::symmetric;
  double eps = 0.05;  // Boole A_eps margin

  std::vector<std::size_t> n_list;
  std::vector<double> t_grid;
  std::size_t replicates = 0;
  std::size_t trend_replicates = 0;  // larger samples for trend-only checks
  std::size_t draws = 0;             // plain i.i.d. draws (Laplace, overshoot, tail)
  std::size_t series_length = 0;     // LePage terms; 0 = default for alpha
  double u_step = 0.0;               // subordinator grid step; 0 = default for the horizon
  double shift = 1.0;                // s in Y(t+s) - Y(s)
  std::size_t L = 1;                 // T_n^{(L)} horizon multiple

  std::vector<double> betas;
  std::vector<double> thetas;
  std::vector<double> alphas;  // paired with betas where both are given
  std::vector<double> scales;

  bool operator==(const ExperimentConfig&) const = default;
};

/// The experiment catalog, in CLI order.
const std::vector<std::string>& experiment_names();

/// Catalog defaults for an experiment (throws ParameterError if unknown).
ExperimentConfig default_config(const std::string& experiment);

/// Domain checks for every field the experiment reads.
void validate(const ExperimentConfig& config);

/// Parse YAML text on top of default_config(experiment); `experiment` may be
/// empty when the text names it.
ExperimentConfig parse_config(const std::string& text, const std::string& experiment = "");
ExperimentConfig load_config(const std::string& path, const std::string& experiment = "");

/// YAML text that parse_config maps back to an equal config.
std::string dump_config(const ExperimentConfig& config);

}  // namespace mlsim
