#pragma once

// The beta-Mittag-Leffler fractional alpha-stable motion
//   Y(t) = int M_beta((t-x)_+, w') dZ(w', x),  control P' x nu,  nu(dx) = (1-beta) x^{-beta} dx,
// simulated through its LePage series restricted to marks in [0, T].

#include <cstdint>
#include <span>
#include <vector>

#include "mlsim/random.hpp"
#include "mlsim/stats.hpp"
#include "mlsim/variant.hpp"

namespace mlsim {

struct YPath {
  double alpha = 1.5;
  double beta = 0.5;
  std::size_t series_length = 0;
  Variant variant = Variant::symmetric;
  std::vector<double> times;
  std::vector<double> values;
};

struct StableConstants {
  double alpha = 1.5;
  double beta = 0.5;
  double c_alpha = 0.0;
  double c_alpha_beta = 0.0;
  Estimate ml_alpha_moment;  // E M_beta(1)^alpha
};

/// H = beta + (1 - beta) / alpha.
double self_similarity_exponent(double alpha, double beta);

/// nu([0, T]) = T^{1-beta}.
double nu_mass(double beta, double horizon);

/// A mark from nu restricted to [0, T], normalized: T U^{1/(1-beta)}.
double sample_nu_restricted(double beta, double horizon, Rng& rng);

/// 5000 terms for alpha >= 1, 2000 below.
std::size_t default_series_length(double alpha);

/// One path of Y on sorted times in [0, T], T = max(times):
///   Y(t) = (C_alpha nu([0,T]))^{1/alpha} sum_{i<=N} eps_i Gamma_i^{-1/alpha} M_i((t - x_i)_+).
/// Kernel paths M_i are drawn exactly at the needed times. The positive variant
/// (eps_i = 1, alpha < 1) adds the conditional mean of the dropped terms.
YPath simulate_Y(double alpha, double beta, std::span<const double> times, std::size_t series_length,
                 Variant variant, Rng& rng);

/// SaS scale of Y(t): ((1-beta) B(1-beta, 1+alpha beta) E M(1)^alpha)^{1/alpha} t^H.
double y_scale(double alpha, double beta, double t, double ml_alpha_moment);

/// C_{alpha,beta} = Gamma(1+beta) ((1-beta) B(1-beta, 1+alpha beta) E M(1)^alpha)^{1/alpha}.
double c_alpha_beta(double alpha, double beta, double ml_alpha_moment);

/// Monte Carlo E M_beta(1)^alpha with its standard error (reps >= 10^4).
Estimate estimate_ml_alpha_moment(double alpha, double beta, std::size_t reps, Rng& rng);

StableConstants stable_constants(double alpha, double beta, std::size_t reps, Rng& rng);

/// Symmetric alpha-stable draw with E exp(i theta X) = exp(-sigma^alpha |theta|^alpha)
/// (Chambers-Mallows-Stuck).
double sample_sas(double alpha, double sigma, Rng& rng);

/// Totally skewed S_alpha(sigma, 1, 0) for alpha < 1 (positive support).
double sample_totally_skewed(double alpha, double sigma, Rng& rng);

struct IncrementCheck {
  double t = 0.0;
  double s = 0.0;
  KsResult ks;            // Y(t+s) - Y(s) against Y(t)
  double critical = 0.0;  // two-sample 1% critical value
};

/// Two-sample KS between samples of Y(t+s) - Y(s) and Y(t) for each t.
/// Replicate r of side k uses seed derive_seed(seed, k, r).
std::vector<IncrementCheck> check_stationary_increments(double alpha, double beta,
                                                        std::span<const double> t_list, double s,
                                                        std::size_t replicates,
                                                        std::size_t series_length, Variant variant,
                                                        std::uint64_t seed, unsigned workers);

}  // namespace mlsim
