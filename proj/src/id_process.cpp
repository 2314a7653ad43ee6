#include "mlsim/id_process.hpp"

#include <algorithm>
#include <cmath>

#include "mlsim/error.hpp"
#include "mlsim/limit_motion.hpp"
#include "mlsim/parallel.hpp"
#include "mlsim/special.hpp"

namespace mlsim {

ParetoLevyModel::ParetoLevyModel(double alpha, Variant variant) : alpha_(alpha), variant_(variant) {
  require(alpha > 0.0 && alpha < 2.0, "ParetoLevyModel: alpha must lie in (0,2)");
}

double ParetoLevyModel::tail(double x) const {
  require(x >= 0.0, "ParetoLevyModel::tail: x must be non-negative");
  const double side = variant_ == Variant::symmetric ? 0.5 : 1.0;
  return side * (x >= 1.0 ? std::pow(x, -alpha_) : 1.0);
}

double ParetoLevyModel::inverse_tail(double y) const {
  require(y > 0.0, "ParetoLevyModel::inverse_tail: y must be positive");
  const double side = variant_ == Variant::symmetric ? 0.5 : 1.0;
  return y < side ? std::pow(y / side, -1.0 / alpha_) : 0.0;
}

double ParetoLevyModel::abs_tail(double x) const {
  require(x >= 0.0, "ParetoLevyModel::abs_tail: x must be non-negative");
  return x >= 1.0 ? std::pow(x, -alpha_) : 1.0;
}

double ParetoLevyModel::inverse_abs_tail(double y) const {
  require(y > 0.0, "ParetoLevyModel::inverse_abs_tail: y must be positive");
  return y < 1.0 ? std::pow(y, -1.0 / alpha_) : 0.0;
}

double ParetoLevyModel::sample_mark(Rng& rng) const {
  const double size = std::pow(uniform_open(rng), -1.0 / alpha_);
  return variant_ == Variant::symmetric ? fair_sign(rng) * size : size;
}

IDProcessSample simulate_X_path(const RenewalChain& chain, const ParetoLevyModel& levy,
                                std::size_t horizon, Rng& rng) {
  require(horizon >= 1, "simulate_X_path: horizon must be >= 1");
  IDProcessSample out;
  out.horizon = horizon;
  out.values.assign(horizon, 0.0);
  std::poisson_distribution<long> count(levy.total_mass() * chain.mu_DN(horizon));
  out.poisson_count = static_cast<std::size_t>(count(rng));
  for (std::size_t j = 0; j < out.poisson_count; ++j) {
    const double mark = levy.sample_mark(rng);
    for (std::size_t n : chain.sample_path_given_DN(horizon, rng)) out.values[n - 1] += mark;
  }
  return out;
}

double c_n(double alpha, double beta, double a_n, double w_n, const ParetoLevyModel& levy) {
  require(beta > 0.0 && beta < 1.0, "c_n: beta must lie in (0,1)");
  require(w_n > 1.0, "c_n: 1/w_n lies outside the exact Pareto inverse; use a larger n");
  const double inverse = levy.variant() == Variant::symmetric ? levy.inverse_abs_tail(1.0 / w_n)
                                                              : levy.inverse_tail(1.0 / w_n);
  return std::tgamma(1.0 + beta) * std::pow(c_alpha(alpha), -1.0 / alpha) * a_n * inverse;
}

Estimate snf_alpha_norm_mc(const RenewalChain& chain, double alpha, std::size_t n,
                           std::size_t reps, Rng& rng) {
  require(alpha > 0.0 && alpha < 2.0, "snf_alpha_norm_mc: alpha must lie in (0,2)");
  require(reps >= 1000, "snf_alpha_norm_mc: reps must be >= 10^3");
  // int |S_n|^alpha dmu = mu(phi <= n) E_{mu_n} S_n^alpha; S_n vanishes off {phi <= n}.
  std::vector<double> powers(reps);
  for (double& p : powers)
    p = std::pow(static_cast<double>(chain.sample_path_given_DN(n, rng).size()), alpha);
  const Estimate m = mean_with_se(powers);
  const double mass = chain.mu_DN(n);
  const double integral = mass * m.value;
  const double norm = std::pow(integral, 1.0 / alpha);
  return {norm, norm / (alpha * integral) * mass * m.std_error};
}

FcltResult fclt_experiment(const RenewalChain& chain, const ParetoLevyModel& levy, double beta,
                           const std::vector<std::size_t>& n_list, const std::vector<double>& t_grid,
                           std::size_t replicates, std::size_t series_length, std::uint64_t seed,
                           unsigned workers) {
  const double alpha = levy.alpha();
  require(levy.variant() == Variant::symmetric || alpha < 1.0,
          "fclt_experiment: the positive variant needs alpha < 1");
  require(!n_list.empty() && !t_grid.empty(), "fclt_experiment: empty n_list or t_grid");
  require(std::is_sorted(t_grid.begin(), t_grid.end()) && t_grid.front() >= 0.0,
          "fclt_experiment: t_grid must be sorted and non-negative");
  FcltResult result{alpha, beta, levy.variant(), n_list, t_grid, {}, {}, {}, {}};
  const double mu_f = 1.0;  // f = 1_A, mu(A) = pi_0 = 1

  std::vector<std::vector<double>> reference(t_grid.size());
  for (std::size_t j = 0; j < t_grid.size(); ++j) {
    reference[j] = parallel_map(replicates, workers, [&](std::size_t r) {
      Rng rng = make_rng(seed, 200 + j, r);
      const double ts[1] = {t_grid[j]};
      return mu_f * simulate_Y(alpha, beta, ts, series_length, levy.variant(), rng).values[0];
    });
  }

  std::vector<std::vector<double>> ks_by_t(t_grid.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const std::size_t n = n_list[i];
    std::vector<std::size_t> cut(t_grid.size());
    for (std::size_t j = 0; j < t_grid.size(); ++j)
      cut[j] = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * t_grid[j] - 1e-9));
    const std::size_t horizon = std::max<std::size_t>(cut.back(), 1);
    require(horizon <= chain.horizon(), "fclt_experiment: chain horizon too short for n * t");
    const double cn = c_n(alpha, beta, chain.a_seq(n), chain.wandering_rate(n), levy);
    result.c_values.push_back(cn);

    const auto sums = parallel_map(replicates, workers, [&](std::size_t r) {
      Rng rng = make_rng(seed, 100 + i, r);
      const IDProcessSample x = simulate_X_path(chain, levy, horizon, rng);
      std::vector<double> partial(cut.size(), 0.0);
      double running = 0.0;
      std::size_t k = 0;
      for (std::size_t j = 0; j < cut.size(); ++j) {
        for (; k < cut[j]; ++k) running += x.values[k];
        partial[j] = running / cn;
      }
      return partial;
    });
    for (std::size_t j = 0; j < t_grid.size(); ++j) {
      std::vector<double> side(replicates);
      for (std::size_t r = 0; r < replicates; ++r) side[r] = sums[r][j];
      const KsResult ks = ks_two_sample(side, reference[j]);
      result.cells.push_back({n, t_grid[j], ks});
      ks_by_t[j].push_back(ks.statistic);
    }
  }
  for (std::size_t j = 0; j < t_grid.size(); ++j) {
    // t = 0: both sides vanish identically; the distance is 0 at every n.
    const bool degenerate = t_grid[j] == 0.0;
    result.monotone_by_t.push_back(degenerate || non_increasing(ks_by_t[j]));
    result.final_ks_by_t.push_back(ks_by_t[j].back());
  }
  return result;
}

}  // namespace mlsim
