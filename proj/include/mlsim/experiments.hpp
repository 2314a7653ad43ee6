#pragma once

#include "mlsim/config.hpp"
#include "mlsim/report.hpp"

namespace mlsim {

/// Runs one catalog entry. The result depends only on the config (including
/// master_seed), never on `workers`.
ExperimentResult run_experiment(const ExperimentConfig& config, unsigned workers);

}  // namespace mlsim
