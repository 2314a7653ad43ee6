#pragma once

#include <cstddef>
#include <vector>

#include "mlsim/random.hpp"

namespace mlsim {

/// Boole's transformation on (0,1/2) u (1/2,1):
/// T(x) = x(1-x)/(1-x-x^2) on (0,1/2), T(x) = 1 - T(1-x) on (1/2,1).
double boole_map(double x);

/// Invariant measure of (a,b): density 1/x^2 + 1/(1-x)^2.
double boole_measure_interval(double a, double b);

/// Preimage of y under the left branch (closed form).
double boole_left_inverse(double y);

/// Orbit state folded by the symmetry x -> 1-x: y = min(x, 1-x).
/// Occupation of the symmetric set A_eps only depends on y.
double boole_folded_step(double y);

/// Boole's map with the Darling-Kac set A_eps = (eps,1/2) u (1/2,1-eps).
/// The wandering rate is built from the preimage ladder of eps under the left
/// branch: u_0 = eps, T(u_k) = u_{k-1}, and {phi > k} n (0,eps) = (0, u_k).
class BooleModel {
 public:
  static constexpr double kBeta = 0.5;

  /// Ladder computed by bisection (absolute tolerance 1e-14) up to ladder_length.
  BooleModel(double eps, std::size_t ladder_length);

  double eps() const { return eps_; }
  double measure_A() const { return measure_a_; }
  std::size_t ladder_length() const { return ladder_.size() - 1; }
  double ladder(std::size_t k) const;

  /// w_n = mu(A) + 2 mu((u_{n-1}, eps)); n in [1, ladder_length + 1].
  double wandering_rate(std::size_t n) const;

  /// a_n = n / (Gamma(3/2)^2 w_n).
  double a_seq(std::size_t n) const;

  /// Draw from mu restricted to A_eps, normalized (inverse CDF).
  double sample_start(Rng& rng) const;

  /// Occupation path S_k(1_A), k = 0..n, of the orbit of x0 under boole_map.
  /// Throws NumericError when the orbit reaches a branch endpoint.
  std::vector<std::size_t> occupation(double x0, std::size_t n) const;

  struct OrbitCounts {
    std::vector<std::size_t> counts;  // S at each checkpoint
    std::size_t restarts = 0;         // orbits discarded at a branch endpoint
  };

  /// S_n(1_A) at sorted checkpoints for an orbit started from sample_start;
  /// an orbit that reaches a branch endpoint is restarted from a fresh point.
  OrbitCounts occupation_counts(const std::vector<std::size_t>& checkpoints, Rng& rng) const;

 private:
  double eps_;
  double measure_a_;
  std::vector<double> ladder_;
};

}  // namespace mlsim
