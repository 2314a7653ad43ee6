#include "mlsim/limit_motion.hpp"

#include <algorithm>
#include <cmath>

#include "mlsim/error.hpp"
#include "mlsim/parallel.hpp"
#include "mlsim/special.hpp"
#include "mlsim/stable.hpp"

namespace mlsim {

namespace {

void check_indices(double alpha, double beta) {
  require(alpha > 0.0 && alpha < 2.0, "alpha must lie in (0,2)");
  require(beta > 0.0 && beta < 1.0, "beta must lie in (0,1)");
}

// M at sorted lags into `out`. Same construction as sample_ml_at_times, except
// that the last passage only needs the marginal M(1) = S^{-beta}.
void kernel_at_lags(double beta, std::span<const double> lags, std::span<double> out, Rng& rng) {
  double clock = 0.0;
  double value = 0.0;
  double ahead = 0.0;
  for (std::size_t j = 0; j < lags.size(); ++j) {
    const double gap = lags[j] - clock;
    if (gap <= ahead) {
      ahead -= gap;
    } else {
      const double level = gap - ahead;
      if (j + 1 == lags.size()) {
        value += std::pow(level / sample_positive_stable(beta, rng), beta);
      } else {
        const PassageDraw p = sample_first_passage(beta, rng);
        value += std::pow(level, beta) * p.time;
        ahead = level * p.overshoot;
      }
    }
    clock = lags[j];
    out[j] = value;
  }
}

}  // namespace

double self_similarity_exponent(double alpha, double beta) {
  check_indices(alpha, beta);
  return beta + (1.0 - beta) / alpha;
}

double nu_mass(double beta, double horizon) {
  require(horizon >= 0.0, "nu_mass: horizon must be non-negative");
  return std::pow(horizon, 1.0 - beta);
}

double sample_nu_restricted(double beta, double horizon, Rng& rng) {
  require(horizon > 0.0, "sample_nu_restricted: horizon must be positive");
  return horizon * std::pow(uniform_open(rng), 1.0 / (1.0 - beta));
}

std::size_t default_series_length(double alpha) { return alpha >= 1.0 ? 5000 : 2000; }

YPath simulate_Y(double alpha, double beta, std::span<const double> times, std::size_t series_length,
                 Variant variant, Rng& rng) {
  check_indices(alpha, beta);
  require(series_length >= 100, "simulate_Y: series length must be >= 100");
  require(variant == Variant::symmetric || alpha < 1.0,
          "simulate_Y: the positive variant needs alpha < 1");
  require(std::is_sorted(times.begin(), times.end()) && (times.empty() || times.front() >= 0.0),
          "simulate_Y: times must be sorted and non-negative");
  YPath path{alpha, beta, series_length, variant, {times.begin(), times.end()},
             std::vector<double>(times.size(), 0.0)};
  if (times.empty() || times.back() == 0.0) return path;

  const double horizon = times.back();
  const double scale = std::pow(c_alpha(alpha) * nu_mass(beta, horizon), 1.0 / alpha);
  const double inv_alpha = 1.0 / alpha;
  std::vector<double> lags(times.size());
  std::vector<double> kernel(times.size());
  double arrival = 0.0;
  for (std::size_t i = 0; i < series_length; ++i) {
    arrival += standard_exponential(rng);
    double weight = std::pow(arrival, -inv_alpha);
    if (variant == Variant::symmetric) weight *= fair_sign(rng);
    const double x = sample_nu_restricted(beta, horizon, rng);
    // The kernel vanishes for t <= x.
    const auto first = static_cast<std::size_t>(
        std::upper_bound(times.begin(), times.end(), x) - times.begin());
    const std::size_t m = times.size() - first;
    for (std::size_t j = 0; j < m; ++j) lags[j] = times[first + j] - x;
    kernel_at_lags(beta, std::span(lags).first(m), std::span(kernel).first(m), rng);
    for (std::size_t j = 0; j < m; ++j) path.values[first + j] += weight * kernel[j];
  }
  for (double& v : path.values) v *= scale;

  if (variant == Variant::positive) {
    // E[sum_{i>N} Gamma_i^{-1/alpha} | Gamma_N] = Gamma_N^{1-1/alpha} / (1/alpha - 1), and
    // E M((t-x)_+) over x ~ nu / nu([0,T]) equals Gamma(2-beta) t / T^{1-beta}.
    const double tail = std::pow(arrival, 1.0 - inv_alpha) / (inv_alpha - 1.0);
    const double per_time = std::tgamma(2.0 - beta) / nu_mass(beta, horizon);
    for (std::size_t j = 0; j < times.size(); ++j)
      path.values[j] += scale * tail * per_time * times[j];
  }
  return path;
}

double y_scale(double alpha, double beta, double t, double ml_alpha_moment) {
  check_indices(alpha, beta);
  require(t >= 0.0, "y_scale: t must be non-negative");
  const double base = (1.0 - beta) * beta_function(1.0 - beta, 1.0 + alpha * beta) * ml_alpha_moment;
  return std::pow(base, 1.0 / alpha) * std::pow(t, self_similarity_exponent(alpha, beta));
}

double c_alpha_beta(double alpha, double beta, double ml_alpha_moment) {
  return std::tgamma(1.0 + beta) * y_scale(alpha, beta, 1.0, ml_alpha_moment);
}

Estimate estimate_ml_alpha_moment(double alpha, double beta, std::size_t reps, Rng& rng) {
  check_indices(alpha, beta);
  require(reps >= 10000, "estimate_ml_alpha_moment: reps must be >= 10^4");
  std::vector<double> draws(reps);
  for (double& d : draws) d = std::pow(sample_ml_marginal(beta, 1.0, rng), alpha);
  return mean_with_se(draws);
}

StableConstants stable_constants(double alpha, double beta, std::size_t reps, Rng& rng) {
  StableConstants k;
  k.alpha = alpha;
  k.beta = beta;
  k.c_alpha = c_alpha(alpha);
  k.ml_alpha_moment = estimate_ml_alpha_moment(alpha, beta, reps, rng);
  k.c_alpha_beta = c_alpha_beta(alpha, beta, k.ml_alpha_moment.value);
  return k;
}

double sample_sas(double alpha, double sigma, Rng& rng) {
  require(alpha > 0.0 && alpha <= 2.0, "sample_sas: alpha must lie in (0,2]");
  const double v = kPi * (uniform_open(rng) - 0.5);
  if (alpha == 1.0) return sigma * std::tan(v);
  const double w = standard_exponential(rng);
  const double x = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha) *
                   std::pow(std::cos(v - alpha * v) / w, (1.0 - alpha) / alpha);
  return sigma * x;
}

double sample_totally_skewed(double alpha, double sigma, Rng& rng) {
  require(alpha > 0.0 && alpha < 1.0, "sample_totally_skewed: alpha must lie in (0,1)");
  return sigma * std::pow(std::cos(kPi * alpha / 2.0), -1.0 / alpha) *
         sample_positive_stable(alpha, rng);
}

std::vector<IncrementCheck> check_stationary_increments(double alpha, double beta,
                                                        std::span<const double> t_list, double s,
                                                        std::size_t replicates,
                                                        std::size_t series_length, Variant variant,
                                                        std::uint64_t seed, unsigned workers) {
  require(s > 0.0, "check_stationary_increments: s must be positive");
  std::vector<IncrementCheck> out;
  for (std::size_t k = 0; k < t_list.size(); ++k) {
    const double t = t_list[k];
    require(t >= 0.0, "check_stationary_increments: t must be non-negative");
    const auto increments = parallel_map(replicates, workers, [&](std::size_t r) {
      Rng rng = make_rng(seed, 2 * k, r);
      const double ts[2] = {s, t + s};
      const YPath y = simulate_Y(alpha, beta, ts, series_length, variant, rng);
      return y.values[1] - y.values[0];
    });
    const auto direct = parallel_map(replicates, workers, [&](std::size_t r) {
      Rng rng = make_rng(seed, 2 * k + 1, r);
      const double ts[1] = {t};
      return simulate_Y(alpha, beta, ts, series_length, variant, rng).values[0];
    });
    out.push_back({t, s, ks_two_sample(increments, direct),
                   ks_critical_value(replicates, replicates, 0.01)});
  }
  return out;
}

}  // namespace mlsim
