#pragma once

// Stationary infinitely divisible process X_n = int f o T^n dM over the
// countdown-chain flow, with f = 1_A and M compound Poisson (local Levy
// measure supported on |x| >= 1 with an exact Pareto tail).

#include <cstdint>
#include <vector>

#include "mlsim/random.hpp"
#include "mlsim/renewal_chain.hpp"
#include "mlsim/stats.hpp"
#include "mlsim/variant.hpp"

namespace mlsim {

/// rho with rho(x, inf) = x^{-alpha}/2 on x >= 1 (symmetric, total mass 1),
/// or rho(x, inf) = x^{-alpha} on x >= 1 (positive, total mass 1).
class ParetoLevyModel {
 public:
  ParetoLevyModel(double alpha, Variant variant);

  double alpha() const { return alpha_; }
  Variant variant() const { return variant_; }
  double total_mass() const { return 1.0; }

  /// rho(x, inf) for x >= 0.
  double tail(double x) const;
  /// rho^{<-}(y) = inf{x >= 0 : rho(x, inf) <= y}.
  double inverse_tail(double y) const;
  /// rho({|v| > x}) for x >= 0.
  double abs_tail(double x) const;
  /// Left-continuous inverse of abs_tail.
  double inverse_abs_tail(double y) const;

  /// |x| = U^{-1/alpha}; fair sign in the symmetric variant.
  double sample_mark(Rng& rng) const;

 private:
  double alpha_;
  Variant variant_;
};

struct IDProcessSample {
  std::size_t horizon = 0;
  std::vector<double> values;  // X_1..X_N
  std::size_t poisson_count = 0;
  std::uint64_t seed = 0;
};

/// Exact draw of (X_1..X_N): K ~ Poisson(rho_total mu(D_N)) points, each with a
/// mark from rho and a path from mu restricted to D_N; points outside D_N never
/// touch the first N coordinates.
IDProcessSample simulate_X_path(const RenewalChain& chain, const ParetoLevyModel& levy,
                                std::size_t horizon, Rng& rng);

/// c_n = Gamma(1+beta) C_alpha^{-1/alpha} a_n rho^{<-}(1/w_n).
/// The inverse is taken of the tail that sets the limit's scale: rho(x, inf) for
/// the positive variant and rho(|v| > x) for the symmetric one.
double c_n(double alpha, double beta, double a_n, double w_n, const ParetoLevyModel& levy);

/// (int |S_n(1_A)|^alpha dmu)^{1/alpha} by sampling mu restricted to {phi <= n}.
Estimate snf_alpha_norm_mc(const RenewalChain& chain, double alpha, std::size_t n,
                           std::size_t reps, Rng& rng);

struct FcltCell {
  std::size_t n = 0;
  double t = 0.0;
  KsResult ks;
};

struct FcltResult {
  double alpha = 0.0;
  double beta = 0.0;
  Variant variant = Variant::symmetric;
  std::vector<std::size_t> n_list;
  std::vector<double> t_grid;
  std::vector<double> c_values;           // c_n per n
  std::vector<FcltCell> cells;            // per (n, t)
  std::vector<bool> monotone_by_t;        // KS non-increasing in n, per t
  std::vector<double> final_ks_by_t;      // KS at the largest n, per t
};

/// Two-sample KS between (1/c_n) sum_{k <= ceil(n t)} X_k and mu(f) Y(t), per (n, t).
/// Streams: replicate r of n_list[i] uses stream 100 + i; the reference at t_grid[j]
/// uses stream 200 + j.
FcltResult fclt_experiment(const RenewalChain& chain, const ParetoLevyModel& levy, double beta,
                           const std::vector<std::size_t>& n_list, const std::vector<double>& t_grid,
                           std::size_t replicates, std::size_t series_length, std::uint64_t seed,
                           unsigned workers);

}  // namespace mlsim
