#include <algorithm>
#include <cmath>

#include "mlsim/error.hpp"
#include "mlsim/renewal_chain.hpp"
#include "mlsim/stats.hpp"

namespace mlsim {

// A_m = {phi = m}; for the countdown chain mu(A_m) = pi_m (start state m), so
// sum_{j<=m} p_n(j) = (w_{m+1} - 1) / (w_{nL+1} - 1).
LinearTimeReport t_inf_law_check(const RenewalChain& chain, std::size_t n, std::size_t L,
                                 std::size_t replicates, Rng& rng) {
  require(n >= 1 && L >= 1, "t_inf_law_check: n and L must be >= 1");
  require(replicates >= 1, "t_inf_law_check: replicates must be >= 1");
  const std::size_t top = n * L;
  require(top <= chain.horizon(), "t_inf_law_check: chain horizon shorter than n L");
  const double beta = chain.beta();
  const double total = chain.wandering_rate(top + 1) - 1.0;
  const auto cdf_at = [&](std::size_t m) { return (chain.wandering_rate(m + 1) - 1.0) / total; };
  const auto limit = [&](double x) {
    return x <= 0.0 ? 0.0 : x >= double(L) ? 1.0 : std::pow(x / double(L), 1.0 - beta);
  };

  LinearTimeReport out;
  out.n = n;
  out.L = static_cast<double>(L);
  // The exact CDF of T/n is a step function; the sup is attained at a jump.
  for (std::size_t m = 1; m <= top; ++m) {
    const double x = double(m) / double(n);
    const double lo = std::abs(cdf_at(m - 1) - limit(x));
    const double hi = std::abs(cdf_at(m) - limit(x));
    out.exact_distance = std::max({out.exact_distance, lo, hi});
  }

  std::vector<double> ratio(replicates);
  for (double& r : ratio) {
    const double u = uniform_open(rng);
    // smallest m with cdf_at(m) >= u
    std::size_t lo = 1, hi = top;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (cdf_at(mid) >= u) hi = mid; else lo = mid + 1;
    }
    r = double(lo) / double(n);
  }
  out.ks = ks_one_sample(ratio, limit);
  return out;
}

}  // namespace mlsim
