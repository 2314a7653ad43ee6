#pragma once

// Shared plumbing for the experiment catalog.

#include <functional>
#include <vector>

#include "mlsim/config.hpp"
#include "mlsim/random.hpp"
#include "mlsim/report.hpp"
#include "mlsim/stats.hpp"

namespace mlsim::detail {

/// Draws are generated in fixed blocks, each with its own seeded stream, so the
/// sample is the same for any worker count.
inline constexpr std::size_t kBlock = 4096;

std::vector<double> blocked_draws(std::size_t count, unsigned workers, std::uint64_t seed,
                                  std::uint64_t stream, const std::function<double(Rng&)>& draw);

Json ks_json(const KsResult& ks);

std::size_t or_default(std::size_t value, std::size_t fallback);

ExperimentResult dk_chain(const ExperimentConfig& c, unsigned workers);
ExperimentResult dk_boole(const ExperimentConfig& c, unsigned workers);
ExperimentResult t_inf_law(const ExperimentConfig& c, unsigned workers);
ExperimentResult tail_marginal(const ExperimentConfig& c, unsigned workers);
ExperimentResult norms(const ExperimentConfig& c, unsigned workers);
ExperimentResult fclt(const ExperimentConfig& c, unsigned workers);

}  // namespace mlsim::detail
