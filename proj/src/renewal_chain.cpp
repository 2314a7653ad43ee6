#include "mlsim/renewal_chain.hpp"

#include <algorithm>
#include <cmath>

#include "mlsim/error.hpp"
#include "mlsim/special.hpp"

namespace mlsim {

RenewalChain::RenewalChain(double beta, std::size_t horizon) : beta_(beta), horizon_(horizon) {
  require(beta > 0.0 && beta < 1.0, "RenewalChain: beta must lie in (0,1)");
  require(horizon >= 1, "RenewalChain: horizon must be >= 1");
  const double s = 1.0 + beta;
  zeta_ = riemann_zeta(s);

  q_.assign(horizon + 1, 0.0);
  for (std::size_t k = 1; k <= horizon; ++k) q_[k] = std::pow(static_cast<double>(k), -s) / zeta_;

  // pi_H from the zeta tail, then the invariance recursion pi_i = pi_{i+1} + q_{i+1}.
  pi_.assign(horizon + 1, 0.0);
  pi_[horizon] = zeta_tail(s, horizon + 1) / zeta_;
  for (std::size_t i = horizon; i-- > 0;) pi_[i] = pi_[i + 1] + q_[i + 1];

  w_.assign(horizon + 2, 0.0);
  for (std::size_t n = 1; n <= horizon + 1; ++n) w_[n] = w_[n - 1] + pi_[n - 1];

  // u_n = sum_{k=1}^n q_k u_{n-k}, accumulated forward so the inner loop is an axpy.
  u_.assign(horizon + 1, 0.0);
  std::vector<double> acc(horizon + 1, 0.0);
  for (std::size_t m = 0; m <= horizon; ++m) {
    u_[m] = (m == 0) ? 1.0 : acc[m];
    const double um = u_[m];
    const std::size_t len = horizon - m;
    double* dst = acc.data() + m + 1;
    const double* src = q_.data() + 1;
    for (std::size_t k = 0; k < len; ++k) dst[k] += um * src[k];
  }
  a_.assign(horizon + 1, 0.0);
  for (std::size_t n = 1; n <= horizon; ++n) a_[n] = a_[n - 1] + u_[n];
}

double RenewalChain::q(std::size_t k) const {
  require(k >= 1 && k <= horizon_, "RenewalChain::q: index outside [1, horizon]");
  return q_[k];
}

double RenewalChain::pi(std::size_t i) const {
  require(i <= horizon_, "RenewalChain::pi: index beyond horizon");
  return pi_[i];
}

double RenewalChain::u(std::size_t n) const {
  require(n <= horizon_, "RenewalChain::u: index beyond horizon");
  return u_[n];
}

double RenewalChain::wandering_rate(std::size_t n) const {
  require(n >= 1 && n <= horizon_ + 1, "RenewalChain::wandering_rate: n outside [1, horizon+1]");
  return w_[n];
}

double RenewalChain::a_seq(std::size_t n) const {
  require(n >= 1 && n <= horizon_, "RenewalChain::a_seq: n outside [1, horizon]");
  return a_[n];
}

double RenewalChain::mu_DN(std::size_t N) const {
  require(N >= 1 && N <= horizon_, "RenewalChain::mu_DN: N outside [1, horizon]");
  return (pi_[0] - pi_[N]) + (w_[N + 1] - pi_[0]);
}

// Smallest k in [1, horizon] with pi_k <= level, or horizon + 1.
std::size_t RenewalChain::first_index_at_or_below(double level) const {
  const auto begin = pi_.begin() + 1;
  const auto it = std::partition_point(begin, pi_.end(), [level](double p) { return p > level; });
  return static_cast<std::size_t>(it - pi_.begin());
}

std::size_t RenewalChain::sample_return_time(Rng& rng) const {
  // P(phi > k) = pi_k, so phi = min{k : pi_k <= U}.
  return first_index_at_or_below(uniform_open(rng));
}

std::vector<std::size_t> RenewalChain::occupation(std::size_t n, Rng& rng) const {
  require(n <= horizon_, "RenewalChain::occupation: n beyond horizon");
  std::vector<std::size_t> path(n + 1, 0);
  std::size_t t = 0;
  std::size_t visits = 0;
  for (;;) {
    const std::size_t next = t + sample_return_time(rng);
    const std::size_t stop = std::min(next, n + 1);
    for (std::size_t k = t + 1; k < stop; ++k) path[k] = visits;
    if (next > n) break;
    path[next] = ++visits;
    t = next;
  }
  return path;
}

std::vector<std::size_t> RenewalChain::occupation_counts(
    const std::vector<std::size_t>& checkpoints, Rng& rng) const {
  std::vector<std::size_t> counts(checkpoints.size(), 0);
  if (checkpoints.empty()) return counts;
  require(std::is_sorted(checkpoints.begin(), checkpoints.end()) && checkpoints.back() <= horizon_,
          "RenewalChain::occupation_counts: checkpoints must be sorted and within the horizon");
  std::size_t t = 0;
  std::size_t visits = 0;
  std::size_t c = 0;
  const std::size_t last = checkpoints.back();
  while (c < checkpoints.size()) {
    const std::size_t next = t + sample_return_time(rng);
    while (c < checkpoints.size() && checkpoints[c] < next) counts[c++] = visits;
    if (next > last) break;
    ++visits;
    t = next;
  }
  return counts;
}

std::vector<std::size_t> RenewalChain::sample_path_given_DN(std::size_t N, Rng& rng) const {
  const double from_zero = pi_[0] - pi_[N];  // P_0(D_N) = sum_{k<=N} q_k
  const double total = mu_DN(N);
  std::size_t first = 0;
  if (uniform_open(rng) * total < from_zero) {
    // Start at 0, first return conditioned to be <= N.
    const double level = pi_[N] + uniform_open(rng) * from_zero;
    first = first_index_at_or_below(level);
  } else {
    // Start at i in [1, N] with weight pi_i; w_[i+1] - 1 = sum_{j=1}^i pi_j.
    const double target = uniform_open(rng) * (w_[N + 1] - pi_[0]);
    const auto it = std::partition_point(w_.begin() + 2, w_.begin() + static_cast<std::ptrdiff_t>(N) + 2,
                                         [&](double w) { return w - pi_[0] < target; });
    first = static_cast<std::size_t>(it - w_.begin()) - 1;
  }
  first = std::clamp<std::size_t>(first, 1, N);
  std::vector<std::size_t> visits{first};
  std::size_t t = first;
  for (;;) {
    const std::size_t next = t + sample_return_time(rng);
    if (next > N) break;
    visits.push_back(next);
    t = next;
  }
  return visits;
}

}  // namespace mlsim
