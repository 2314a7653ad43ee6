#pragma once

#include <cstddef>
#include <vector>

#include "mlsim/random.hpp"

namespace mlsim {

/// Null-recurrent countdown chain on {0, 1, 2, ...}: from 0 the chain jumps to
/// k-1 with probability q_k = k^{-(1+beta)} / zeta(1+beta), and from i > 0 it
/// moves to i-1. The shift on its path space, with mu = sum_i pi_i P_i and
/// A = {x_0 = 0}, is conservative, ergodic and pointwise dual ergodic.
///
/// All tables are computed once, up to `horizon`, at construction.
class RenewalChain {
 public:
  RenewalChain(double beta, std::size_t horizon);

  double beta() const { return beta_; }
  std::size_t horizon() const { return horizon_; }
  double zeta() const { return zeta_; }

  /// Return-time pmf, k in [1, horizon].
  double q(std::size_t k) const;
  /// Invariant measure pi_i = P_0(phi > i), pi_0 = 1; i in [0, horizon].
  double pi(std::size_t i) const;
  /// Renewal sequence u_n = P_0(x_n = 0); n in [0, horizon].
  double u(std::size_t n) const;

  /// w_n = mu(union_{k<n} T^{-k} A) = sum_{i<n} pi_i; n in [1, horizon + 1].
  ///
  /// For the countdown chain a path visits 0 at some time k < n exactly when
  /// x_0 < n: from i >= 1 the first visit is at time i, and x_0 = 0 is in A.
  double wandering_rate(std::size_t n) const;

  /// a_n = sum_{k=1}^n u_k. The dual operator satisfies T^k 1_A = P_0(x_k = 0)
  /// on A, so this is the exact Darling-Kac normalizer of A (mu(A) = 1).
  double a_seq(std::size_t n) const;

  /// mu(D_N), D_N = {x_n = 0 for some 1 <= n <= N}: sum_{k<=N} q_k + sum_{i=1}^N pi_i.
  double mu_DN(std::size_t N) const;

  /// A draw of phi under P_0; returns horizon + 1 for any value beyond the horizon.
  std::size_t sample_return_time(Rng& rng) const;

  /// Occupation path S_k(1_A), k = 0..n, from x_0 = 0.
  std::vector<std::size_t> occupation(std::size_t n, Rng& rng) const;

  /// S_n(1_A) from x_0 = 0 at each checkpoint (sorted, each <= horizon).
  std::vector<std::size_t> occupation_counts(const std::vector<std::size_t>& checkpoints,
                                             Rng& rng) const;

  /// Sorted visit times to 0 in [1, N] of a path drawn from mu restricted to D_N.
  std::vector<std::size_t> sample_path_given_DN(std::size_t N, Rng& rng) const;

 private:
  std::size_t first_index_at_or_below(double level) const;

  double beta_;
  std::size_t horizon_;
  double zeta_;
  std::vector<double> q_;       // q_[k], k = 0..horizon (q_[0] unused)
  std::vector<double> pi_;      // pi_[i], i = 0..horizon
  std::vector<double> w_;       // w_[n] = sum_{i<n} pi_i, n = 0..horizon+1
  std::vector<double> u_;       // u_[n], n = 0..horizon
  std::vector<double> a_;       // a_[n] = sum_{k=1}^n u_k
};

}  // namespace mlsim
