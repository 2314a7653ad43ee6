#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "mlsim/error.hpp"
#include "mlsim/renewal_chain.hpp"
#include "mlsim/special.hpp"
#include "mlsim/stats.hpp"

using namespace mlsim;

TEST_CASE("zeta") {
  for (double s : {1.1, 1.5, 1.9, 3.0}) CHECK(riemann_zeta(s) == doctest::Approx(boost::math::zeta(s)).epsilon(1e-12));
  double direct = 0.0;
  for (int k = 7; k < 2000000; ++k) direct += std::pow(k, -3.0);
  CHECK(zeta_tail(3.0, 7) == doctest::Approx(direct).epsilon(1e-10));
  CHECK_THROWS_AS(zeta_tail(1.0, 1), ParameterError);
}

TEST_CASE("renewal chain tables") {
  const RenewalChain chain(0.5, 4000);
  const double z = boost::math::zeta(1.5);

  SUBCASE("return-time pmf sums to one") {
    double sum = 0.0;
    for (std::size_t k = 1; k <= chain.horizon(); ++k) sum += chain.q(k);
    CHECK(sum + chain.pi(chain.horizon()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(chain.q(1) == doctest::Approx(1.0 / z).epsilon(1e-12));
  }
  SUBCASE("pi is invariant: pi_i = pi_0 q_{i+1} + pi_{i+1}") {
    CHECK(chain.pi(0) == doctest::Approx(1.0));
    for (std::size_t i = 0; i + 1 <= chain.horizon(); i += 37)
      CHECK(chain.pi(i) == doctest::Approx(chain.pi(0) * chain.q(i + 1) + chain.pi(i + 1)).epsilon(1e-12));
  }
  SUBCASE("renewal equation") {
    for (std::size_t n : {1, 2, 5, 50, 400}) {
      double conv = 0.0;
      for (std::size_t k = 1; k <= n; ++k) conv += chain.q(k) * chain.u(n - k);
      CHECK(chain.u(n) == doctest::Approx(conv).epsilon(1e-12));
    }
    CHECK(chain.u(0) == 1.0);
  }
  SUBCASE("wandering rate and normalizer") {
    CHECK(chain.wandering_rate(1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(chain.wandering_rate(2) == doctest::Approx(2.0 - 1.0 / z).epsilon(1e-12));
    CHECK(chain.wandering_rate(2) == doctest::Approx(1.6172).epsilon(1e-4));
    CHECK(chain.a_seq(1) == doctest::Approx(chain.q(1)));
    CHECK(chain.mu_DN(1) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t n : {1, 10, 300, 4000}) CHECK(chain.mu_DN(n) == doctest::Approx(chain.wandering_rate(n)).epsilon(1e-12));
    // Regular variation: w_n ~ n^{1-beta} zeta-scaled; the ratio w_{4n}/w_n tends to 2.
    CHECK(chain.wandering_rate(4000) / chain.wandering_rate(1000) == doctest::Approx(2.0).epsilon(0.02));
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS(chain.q(0), ParameterError);
    CHECK_THROWS_AS(chain.a_seq(4001), ParameterError);
    CHECK_THROWS_AS(RenewalChain(1.0, 10), ParameterError);
  }
}

TEST_CASE("occupation from 0 has mean a_n") {
  const RenewalChain chain(0.5, 2000);
  Rng rng = make_rng(31, 0, 0);
  const std::vector<std::size_t> checkpoints = {10, 200, 2000};
  std::map<std::size_t, std::vector<double>> at;
  for (int r = 0; r < 20000; ++r) {
    const auto counts = chain.occupation_counts(checkpoints, rng);
    for (std::size_t c = 0; c < checkpoints.size(); ++c) at[checkpoints[c]].push_back(static_cast<double>(counts[c]));
  }
  for (std::size_t n : checkpoints) {
    const Estimate e = mean_with_se(at[n]);
    CHECK(std::abs(e.value - chain.a_seq(n)) < 4.0 * e.std_error);
  }
  const auto path = chain.occupation(50, rng);
  CHECK(path.front() == 0);
  for (std::size_t k = 1; k < path.size(); ++k) CHECK(path[k] - path[k - 1] <= 1);
}

TEST_CASE("mu restricted to D_N") {
  const RenewalChain chain(0.6, 64);
  Rng rng = make_rng(32, 0, 0);
  for (std::size_t n = 1; n <= 8; ++n) {
    // Enumeration: the first visit is at j in [1, N] with mass pi_j (start at j)
    // plus q_j (start at 0), i.e. pi_{j-1}; by stationarity E[#visits] = N / mu(D_N).
    const int reps = 40000;
    std::vector<double> first_freq(n + 1, 0.0);
    std::vector<double> count(reps);
    for (int r = 0; r < reps; ++r) {
      const auto v = chain.sample_path_given_DN(n, rng);
      REQUIRE(!v.empty());
      first_freq[v.front()] += 1.0 / reps;
      count[r] = static_cast<double>(v.size());
      CHECK(v.back() <= n);
    }
    const double mass = chain.mu_DN(n);
    for (std::size_t j = 1; j <= n; ++j) {
      const double p = chain.pi(j - 1) / mass;
      CHECK(std::abs(first_freq[j] - p) < 3.0 * std::sqrt(p * (1 - p) / reps) + 1e-9);
    }
    const Estimate e = mean_with_se(count);
    CHECK(std::abs(e.value - static_cast<double>(n) / mass) < 4.0 * e.std_error + 1e-12);
  }
}

TEST_CASE("return-time identities under mu, by enumeration") {
  // Build the law of (x_0, phi) under mu from q alone: x_0 = i >= 1 has mass P_0(phi > i)
  // and phi = i; x_0 = 0 has mass 1 and phi ~ q.
  const double beta = 0.4;
  const std::size_t horizon = 200;
  const RenewalChain chain(beta, horizon);
  const double z = boost::math::zeta(1.0 + beta);
  std::vector<double> q(horizon + 1, 0.0), tail(horizon + 1, 0.0);
  for (std::size_t k = 1; k <= horizon; ++k) q[k] = std::pow(static_cast<double>(k), -(1.0 + beta)) / z;
  tail[0] = 1.0;
  for (std::size_t k = 1; k <= horizon; ++k) tail[k] = tail[k - 1] - q[k];

  for (std::size_t k = 1; k < horizon; ++k) {
    const double on_a = q[k];               // mu(A, phi = k)
    const double off_a = tail[k];           // mu(x_0 = k) = mu(A^c, phi = k)
    double a_beyond = 0.0;                  // mu(A, phi > k)
    for (std::size_t j = k + 1; j <= horizon; ++j) a_beyond += q[j];
    a_beyond += tail[horizon];
    CHECK(on_a == doctest::Approx(chain.q(k)).epsilon(1e-12));
    CHECK(a_beyond == doctest::Approx(chain.pi(k)).epsilon(1e-10));       // = mu(A_k)
    CHECK(off_a == doctest::Approx(chain.pi(k)).epsilon(1e-10));
    CHECK(on_a + off_a == doctest::Approx(chain.pi(k - 1)).epsilon(1e-10));  // mu(phi = k) = P_0(phi >= k)
  }
}
