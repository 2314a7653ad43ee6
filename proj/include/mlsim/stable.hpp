#pragma once

// Positive stable laws, stable subordinators and their inverses
// (Mittag-Leffler processes), overshoots, and a grid Hoelder statistic.

#include <span>
#include <vector>

#include "mlsim/random.hpp"

namespace mlsim {

/// Increasing path of a beta-stable subordinator sampled on the grid k * u_step.
struct SubordinatorGrid {
  double beta = 0.5;
  double u_step = 1e-3;
  std::vector<double> values;  // values[0] == 0, strictly increasing

  double u_max() const { return u_step * static_cast<double>(values.size() - 1); }
  double last() const { return values.back(); }
};

/// Discretized Mittag-Leffler path M(t_j).
/// resolution == 0 marks an exact path (no grid inversion).
struct MLPath {
  double beta = 0.5;
  std::vector<double> times;
  std::vector<double> values;
  double resolution = 0.0;
};

enum class OvershootMethod { grid, exact_beta };

struct OvershootSample {
  double r = 1.0;
  double delta = 0.0;
  OvershootMethod method = OvershootMethod::exact_beta;
};

/// A draw of S_beta(1): E exp(-theta S) = exp(-theta^beta).
/// Kanter's uniform/exponential representation.
double sample_positive_stable(double beta, Rng& rng);

/// Kanter's function A(u) on (0,1); S = (A(U)/E)^{(1-beta)/beta}.
double kanter_a(double beta, double u);

/// Subordinator on the grid 0, u_step, ..., >= u_max.
SubordinatorGrid simulate_subordinator_grid(double beta, double u_step, double u_max, Rng& rng);

/// Append increments until the grid reaches operational time new_u_max.
/// Existing values are kept, so the extended grid is an exact continuation.
void extend_subordinator_grid(SubordinatorGrid& grid, double new_u_max, Rng& rng);

/// M(t) = u_step * min{k : values[k] >= t} for each t (times non-decreasing, >= 0).
/// Throws GridExhausted when max(times) exceeds the last grid value.
MLPath invert_to_ml_path(const SubordinatorGrid& grid, std::span<const double> times);

/// Grid inversion with the exhaustion policy: starting from u_max, the grid is
/// extended (doubling u_max) until it covers max(times).
MLPath simulate_ml_path_grid(double beta, std::span<const double> times, double u_step,
                             double u_max, Rng& rng);

/// Default operational-time step: 1e-3 * E M(horizon).
double default_u_step(double beta, double horizon);

/// n-th moment of M_beta(t): n! t^{n beta} / Gamma(1 + n beta). Non-integer n
/// gives the fractional moment Gamma(1+n) t^{n beta} / Gamma(1 + n beta).
double ml_moment(double beta, double t, double n);

/// Exact draw of M_beta(t) via M(t) = (t / S_beta(1))^beta.
double sample_ml_marginal(double beta, double t, Rng& rng);

/// Exact joint draw of (M_beta(1), overshoot of level 1).
struct PassageDraw {
  double time;       // M_beta(1)
  double overshoot;  // S_beta(M_beta(1)) - 1
};
PassageDraw sample_first_passage(double beta, Rng& rng);

/// Exact joint draw of M_beta at sorted times (renewal at each passage).
std::vector<double> sample_ml_at_times(double beta, std::span<const double> times, Rng& rng);

/// Overshoot of level r: delta = r V / (1 - V), V ~ Beta(1 - beta, beta).
OvershootSample sample_overshoot_exact(double beta, double r, Rng& rng);

/// Overshoot read off a grid path: first grid value >= r, minus r.
OvershootSample overshoot_from_grid(const SubordinatorGrid& grid, double r);

/// CDF of the overshoot law: P(delta_r <= x) = I_{x/(r+x)}(1-beta, beta).
double overshoot_cdf(double beta, double r, double x);

/// sup over grid pairs s < t < s + 1/2 of |M(t)-M(s)| / ((t-s)^beta |log(t-s)|^exponent_log).
double holder_modulus(const MLPath& path, double exponent_log);

}  // namespace mlsim
