#include "mlsim/stable.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>

#include "mlsim/error.hpp"
#include "mlsim/special.hpp"

namespace mlsim {

namespace {

void check_beta(double beta) {
  require(beta > 0.0 && beta < 1.0, "stability index beta must lie in (0,1)");
}

// A(0+) = beta^{beta/(1-beta)} (1-beta); A is increasing on (0,1).
double kanter_a_at_zero(double beta) {
  return std::pow(beta, beta / (1.0 - beta)) * (1.0 - beta);
}

}  // namespace

double kanter_a(double beta, double u) {
  const double log_a = beta / (1.0 - beta) * std::log(std::sin(beta * kPi * u)) +
                       std::log(std::sin((1.0 - beta) * kPi * u)) -
                       std::log(std::sin(kPi * u)) / (1.0 - beta);
  return std::exp(log_a);
}

double sample_positive_stable(double beta, Rng& rng) {
  check_beta(beta);
  const double u = uniform_open(rng);
  const double e = standard_exponential(rng);
  return std::pow(kanter_a(beta, u) / e, (1.0 - beta) / beta);
}

SubordinatorGrid simulate_subordinator_grid(double beta, double u_step, double u_max, Rng& rng) {
  check_beta(beta);
  require(u_step > 0.0, "simulate_subordinator_grid: u_step must be positive");
  require(u_max >= u_step, "simulate_subordinator_grid: u_max must be >= u_step");
  SubordinatorGrid grid{beta, u_step, {0.0}};
  extend_subordinator_grid(grid, u_max, rng);
  return grid;
}

void extend_subordinator_grid(SubordinatorGrid& grid, double new_u_max, Rng& rng) {
  const auto steps = static_cast<std::size_t>(std::ceil(new_u_max / grid.u_step - 1e-9));
  if (steps + 1 <= grid.values.size()) return;
  const double scale = std::pow(grid.u_step, 1.0 / grid.beta);
  grid.values.reserve(steps + 1);
  double level = grid.values.back();
  while (grid.values.size() < steps + 1) {
    level += scale * sample_positive_stable(grid.beta, rng);
    grid.values.push_back(level);
  }
}

MLPath invert_to_ml_path(const SubordinatorGrid& grid, std::span<const double> times) {
  MLPath path{grid.beta, {times.begin(), times.end()}, {}, grid.u_step};
  path.values.reserve(times.size());
  std::size_t k = 0;
  double previous = 0.0;
  for (double t : times) {
    require(t >= 0.0 && t >= previous, "invert_to_ml_path: times must be non-negative and sorted");
    previous = t;
    while (k < grid.values.size() && grid.values[k] < t) ++k;
    if (k == grid.values.size()) throw GridExhausted(t, grid.values.back());
    path.values.push_back(grid.u_step * static_cast<double>(k));
  }
  return path;
}

MLPath simulate_ml_path_grid(double beta, std::span<const double> times, double u_step,
                             double u_max, Rng& rng) {
  SubordinatorGrid grid = simulate_subordinator_grid(beta, u_step, u_max, rng);
  const double horizon = times.empty() ? 0.0 : *std::max_element(times.begin(), times.end());
  while (grid.last() < horizon) extend_subordinator_grid(grid, 2.0 * grid.u_max(), rng);
  return invert_to_ml_path(grid, times);
}

double default_u_step(double beta, double horizon) {
  check_beta(beta);
  require(horizon > 0.0, "default_u_step: horizon must be positive");
  return 1e-3 * ml_moment(beta, horizon, 1.0);
}

double ml_moment(double beta, double t, double n) {
  check_beta(beta);
  require(t >= 0.0 && n >= 0.0, "ml_moment: t and n must be non-negative");
  if (n == 0.0) return 1.0;
  return std::exp(std::lgamma(1.0 + n) - std::lgamma(1.0 + n * beta)) * std::pow(t, n * beta);
}

double sample_ml_marginal(double beta, double t, Rng& rng) {
  require(t >= 0.0, "sample_ml_marginal: t must be non-negative");
  if (t == 0.0) return 0.0;
  return std::pow(t / sample_positive_stable(beta, rng), beta);
}

PassageDraw sample_first_passage(double beta, Rng& rng) {
  check_beta(beta);
  // Position just before the passage jump: Beta(beta, 1-beta) (generalized arcsine).
  const double undershoot = beta_variate(beta, 1.0 - beta, rng);
  // Given the undershoot y, M(1) = y^beta * W with W = S'^{-beta}, S' the positive
  // stable law tilted by s^{-beta}. In Kanter form the tilt moves E to Gamma(2-beta)
  // and U to the density proportional to A(u)^{-(1-beta)}.
  const double a0 = kanter_a_at_zero(beta);
  double a = 0.0;
  for (;;) {
    const double u = uniform_open(rng);
    a = kanter_a(beta, u);
    if (uniform_open(rng) <= std::pow(a0 / a, 1.0 - beta)) break;
  }
  const double g = standard_gamma(2.0 - beta, rng);
  const double w = std::pow(g / a, 1.0 - beta);
  // The jump that crosses level 1 is Pareto(beta) beyond the gap 1 - y.
  const double v = uniform_open(rng);
  const double overshoot = (1.0 - undershoot) * (std::pow(v, -1.0 / beta) - 1.0);
  return {std::pow(undershoot, beta) * w, overshoot};
}

std::vector<double> sample_ml_at_times(double beta, std::span<const double> times, Rng& rng) {
  check_beta(beta);
  std::vector<double> out;
  out.reserve(times.size());
  double clock = 0.0;  // last requested time
  double value = 0.0;  // M(clock)
  double ahead = 0.0;  // S(M(clock)) - clock
  for (double t : times) {
    require(t >= clock, "sample_ml_at_times: times must be non-negative and sorted");
    const double gap = t - clock;
    if (gap <= ahead) {
      ahead -= gap;
    } else {
      const double level = gap - ahead;
      const PassageDraw p = sample_first_passage(beta, rng);
      value += std::pow(level, beta) * p.time;
      ahead = level * p.overshoot;
    }
    clock = t;
    out.push_back(value);
  }
  return out;
}

OvershootSample sample_overshoot_exact(double beta, double r, Rng& rng) {
  check_beta(beta);
  require(r > 0.0, "sample_overshoot_exact: r must be positive");
  double v = beta_variate(1.0 - beta, beta, rng);
  while (v >= 1.0) v = beta_variate(1.0 - beta, beta, rng);
  return {r, r * v / (1.0 - v), OvershootMethod::exact_beta};
}

OvershootSample overshoot_from_grid(const SubordinatorGrid& grid, double r) {
  require(r > 0.0, "overshoot_from_grid: r must be positive");
  const auto it = std::lower_bound(grid.values.begin(), grid.values.end(), r);
  if (it == grid.values.end()) throw GridExhausted(r, grid.values.back());
  return {r, *it - r, OvershootMethod::grid};
}

double overshoot_cdf(double beta, double r, double x) {
  check_beta(beta);
  require(r > 0.0, "overshoot_cdf: r must be positive");
  if (x <= 0.0) return 0.0;
  return boost::math::ibeta(1.0 - beta, beta, x / (r + x));
}

double holder_modulus(const MLPath& path, double exponent_log) {
  const std::size_t m = path.times.size();
  if (m < 2 || path.values.size() != m) throw ParameterError("holder_modulus: degenerate grid");
  const double beta = path.beta;
  const auto denominator = [&](double dt) {
    return std::pow(dt, beta) * std::pow(-std::log(dt), exponent_log);
  };
  // Uniform grids: denominators depend on the lag only.
  const double step = (path.times.back() - path.times.front()) / static_cast<double>(m - 1);
  bool uniform = step > 0.0;
  for (std::size_t i = 1; uniform && i < m; ++i)
    uniform = std::abs(path.times[i] - path.times[i - 1] - step) <= 1e-9 * step;
  std::vector<double> by_lag;
  if (uniform) {
    for (std::size_t lag = 1; lag < m && step * static_cast<double>(lag) < 0.5; ++lag)
      by_lag.push_back(denominator(step * static_cast<double>(lag)));
  }
  double sup = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double dt = path.times[j] - path.times[i];
      if (dt >= 0.5) break;
      if (dt <= 0.0) continue;
      const std::size_t lag = j - i;
      const double denom = (uniform && lag <= by_lag.size()) ? by_lag[lag - 1] : denominator(dt);
      sup = std::max(sup, std::abs(path.values[j] - path.values[i]) / denom);
    }
  }
  return sup;
}

}  // namespace mlsim
