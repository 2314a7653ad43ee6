#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "mlsim/error.hpp"
#include "mlsim/special.hpp"
#include "mlsim/stable.hpp"
#include "mlsim/stats.hpp"

using namespace mlsim;

namespace {

// Kolmogorov 1% critical value for n draws against a known CDF.
double ks1(std::size_t n) { return ks_critical_value(n, 0.01); }

}  // namespace

TEST_CASE("positive stable draws match the Laplace transform") {
  Rng rng = make_rng(11, 0, 0);
  for (double beta : {0.3, 0.5, 0.8}) {
    std::vector<double> s(200000);
    for (double& x : s) x = sample_positive_stable(beta, rng);
    for (double theta : {0.5, 1.0, 2.0}) {
      std::vector<double> e(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) e[i] = std::exp(-theta * s[i]);
      const Estimate m = mean_with_se(e);
      CHECK(std::abs(m.value - std::exp(-std::pow(theta, beta))) < 4.0 * m.std_error);
    }
  }
}

TEST_CASE("beta = 1/2 is the Levy law") {
  // P(S <= x) = erfc(1/(2 sqrt x)), so P(S > 1) = erf(1/2).
  Rng rng = make_rng(12, 0, 0);
  std::vector<double> s(100000);
  for (double& x : s) x = sample_positive_stable(0.5, rng);
  const KsResult ks = ks_one_sample(s, [](double x) { return x <= 0 ? 0.0 : std::erfc(0.5 / std::sqrt(x)); });
  CHECK(ks.statistic < ks1(s.size()));
  std::size_t above = 0;
  for (double x : s) above += x > 1.0;
  const double p = std::erf(0.5);
  CHECK(p == doctest::Approx(0.5205).epsilon(1e-3));
  CHECK(std::abs(above / 1e5 - p) < 4.0 * std::sqrt(p * (1 - p) / 1e5));
}

TEST_CASE("draws are positive and beta outside (0,1) throws") {
  Rng rng = make_rng(13, 0, 0);
  for (int i = 0; i < 10000; ++i) CHECK(sample_positive_stable(0.9, rng) > 0.0);
  CHECK_THROWS_AS(sample_positive_stable(1.0, rng), ParameterError);
  CHECK_THROWS_AS(sample_positive_stable(0.0, rng), ParameterError);
}

TEST_CASE("Kanter's A is increasing") {
  for (double beta : {0.2, 0.5, 0.9}) {
    double prev = 0.0;
    for (int i = 1; i < 1000; ++i) {
      const double a = kanter_a(beta, i / 1000.0);
      CHECK(a > prev);
      prev = a;
    }
  }
}

TEST_CASE("subordinator grid") {
  Rng rng = make_rng(14, 0, 0);
  const SubordinatorGrid g = simulate_subordinator_grid(0.5, 0.01, 3.0, rng);
  CHECK(g.values.front() == 0.0);
  CHECK(g.u_max() >= 3.0 - 1e-12);
  for (std::size_t k = 1; k < g.values.size(); ++k) CHECK(g.values[k] > g.values[k - 1]);

  SUBCASE("two unit steps are 4 S for beta = 1/2") {
    std::vector<double> grid2, direct;
    for (int r = 0; r < 20000; ++r) {
      grid2.push_back(simulate_subordinator_grid(0.5, 1.0, 2.0, rng).values[2]);
      direct.push_back(4.0 * sample_positive_stable(0.5, rng));
    }
    CHECK(ks_two_sample(grid2, direct).statistic < ks_critical_value(20000, 20000, 0.01));
  }
  SUBCASE("Laplace transform at the last grid point") {
    const double beta = 0.7, h = 0.25;
    std::vector<double> e;
    for (int r = 0; r < 50000; ++r) {
      const SubordinatorGrid gg = simulate_subordinator_grid(beta, h, 1.0, rng);
      e.push_back(std::exp(-gg.values[4]));
    }
    const Estimate m = mean_with_se(e);
    CHECK(std::abs(m.value - std::exp(-1.0)) < 4.0 * m.std_error);  // S(1): exp(-u)
  }
  SUBCASE("increments are exchangeable across blocks") {
    std::vector<double> first, later;
    for (int r = 0; r < 20000; ++r) {
      const SubordinatorGrid gg = simulate_subordinator_grid(0.4, 0.1, 1.0, rng);
      first.push_back(gg.values[1]);
      later.push_back(gg.values[8] - gg.values[7]);
    }
    CHECK(ks_two_sample(first, later).statistic < ks_critical_value(20000, 20000, 0.01));
  }
  SUBCASE("extension keeps the existing values") {
    SubordinatorGrid gg = simulate_subordinator_grid(0.5, 0.1, 1.0, rng);
    const std::vector<double> before = gg.values;
    extend_subordinator_grid(gg, 4.0, rng);
    REQUIRE(gg.values.size() > before.size());
    for (std::size_t k = 0; k < before.size(); ++k) CHECK(gg.values[k] == before[k]);
  }
}

TEST_CASE("grid inversion") {
  Rng rng = make_rng(15, 0, 0);
  const SubordinatorGrid g = simulate_subordinator_grid(0.6, 0.05, 2.0, rng);
  const double h = g.u_step;
  SUBCASE("M(0) = 0 and values on the grid") {
    const std::vector<double> ts = {0.0, 0.3 * g.last(), 0.9 * g.last()};
    const MLPath p = invert_to_ml_path(g, ts);
    CHECK(p.values[0] == 0.0);
    for (double v : p.values) CHECK(std::abs(v / h - std::round(v / h)) < 1e-9);
    CHECK(p.values[1] <= p.values[2]);
  }
  SUBCASE("beyond the grid throws GridExhausted") {
    const std::vector<double> ts = {2.0 * g.last()};
    CHECK_THROWS_AS(invert_to_ml_path(g, ts), GridExhausted);
  }
  SUBCASE("unsorted times throw") {
    const std::vector<double> ts = {0.5 * g.last(), 0.1 * g.last()};
    CHECK_THROWS_AS(invert_to_ml_path(g, ts), ParameterError);
  }
  SUBCASE("the exhaustion policy extends the grid") {
    const std::vector<double> ts = {0.5, 1000.0};
    const MLPath p = simulate_ml_path_grid(0.6, ts, 0.05, 0.1, rng);
    CHECK(p.values.size() == 2);
    CHECK(p.values[1] >= p.values[0]);
  }
}

TEST_CASE("E M(1) under grid inversion converges as the step shrinks") {
  const double beta = 0.5;
  const double exact = ml_moment(beta, 1.0, 1.0);
  const std::vector<double> ts = {1.0};
  for (double h : {0.4, 0.1, 0.025}) {
    Rng rng = make_rng(16, static_cast<std::uint64_t>(1 / h), 0);
    std::vector<double> m(20000);
    for (double& v : m) v = simulate_ml_path_grid(beta, ts, h, 2.0, rng).values[0];
    const Estimate e = mean_with_se(m);
    // Grid inversion rounds M up to the next multiple of h.
    CHECK(e.value > exact - 4.0 * e.std_error);
    CHECK(e.value < exact + h + 4.0 * e.std_error);
  }
}

TEST_CASE("Mittag-Leffler moments") {
  CHECK(ml_moment(0.5, 1.0, 0.0) == 1.0);
  CHECK(ml_moment(0.5, 1.0, 1.0) == doctest::Approx(1.1283791671).epsilon(1e-9));
  CHECK(ml_moment(0.5, 1.0, 2.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ml_moment(0.3, 2.0, 1.0) == doctest::Approx(std::pow(2.0, 0.3) / std::tgamma(1.3)));

  Rng rng = make_rng(17, 0, 0);
  std::vector<double> m(100000);
  for (double& v : m) v = sample_ml_marginal(0.3, 2.0, rng);
  const Estimate e = mean_with_se(m);
  CHECK(std::abs(e.value - ml_moment(0.3, 2.0, 1.0)) < 4.0 * e.std_error);
  CHECK(sample_ml_marginal(0.3, 0.0, rng) == 0.0);
}

TEST_CASE("exact first passage") {
  const double beta = 0.6;
  Rng rng = make_rng(18, 0, 0);
  std::vector<double> time(100000), over(100000);
  for (std::size_t i = 0; i < time.size(); ++i) {
    const PassageDraw p = sample_first_passage(beta, rng);
    time[i] = p.time;
    over[i] = p.overshoot;
  }
  const Estimate e = mean_with_se(time);
  CHECK(std::abs(e.value - ml_moment(beta, 1.0, 1.0)) < 4.0 * e.std_error);
  std::vector<double> direct(time.size());
  for (double& v : direct) v = sample_ml_marginal(beta, 1.0, rng);
  CHECK(ks_two_sample(time, direct).statistic < ks_critical_value(time.size(), direct.size(), 0.01));
  CHECK(ks_one_sample(over, [&](double x) { return overshoot_cdf(beta, 1.0, x); }).statistic <
        ks1(over.size()));
}

TEST_CASE("joint exact draws are self-similar and have the right marginals") {
  const double beta = 0.4;
  Rng rng = make_rng(19, 0, 0);
  const std::vector<double> ts = {0.5, 1.0, 2.0};
  std::vector<double> at1, at2, scaled;
  for (int r = 0; r < 30000; ++r) {
    const auto v = sample_ml_at_times(beta, ts, rng);
    CHECK(v[0] <= v[1]);
    CHECK(v[1] <= v[2]);
    at1.push_back(v[1]);
    at2.push_back(v[2]);
    scaled.push_back(std::pow(2.0, beta) * sample_ml_marginal(beta, 1.0, rng));
  }
  const double crit = ks_critical_value(30000, 30000, 0.01);
  CHECK(ks_two_sample(at2, scaled).statistic < crit);
  std::vector<double> direct(at1.size());
  for (double& v : direct) v = sample_ml_marginal(beta, 1.0, rng);
  CHECK(ks_two_sample(at1, direct).statistic < crit);
}

TEST_CASE("overshoot law") {
  // P(delta_r <= r) = I_{1/2}(1-beta, beta) = 1/2 at beta = 1/2.
  CHECK(overshoot_cdf(0.5, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(overshoot_cdf(0.3, 3.0, 1.7) == doctest::Approx(overshoot_cdf(0.3, 1.0, 1.7 / 3.0)).epsilon(1e-12));
  CHECK(overshoot_cdf(0.3, 1.0, 0.0) == 0.0);

  // Against quadrature of the density sin(pi beta)/pi r^beta x^{-beta} (r+x)^{-1}.
  for (double beta : {0.3, 0.7}) {
    const double r = 2.0;
    for (double x : {0.1, 1.0, 5.0}) {
      // Substitute x = s^{1/(1-beta)} to remove the endpoint singularity.
      const double p = 1.0 / (1.0 - beta);
      auto f = [&](double s) {
        const double y = std::pow(s, p);
        return p * std::pow(s, p - 1.0) * std::sin(kPi * beta) / kPi * std::pow(r, beta) *
               std::pow(y, -beta) / (r + y);
      };
      const double q = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          f, 0.0, std::pow(x, 1.0 - beta), 10, 1e-12);
      CHECK(overshoot_cdf(beta, r, x) == doctest::Approx(q).epsilon(1e-8));
    }
  }

  Rng rng = make_rng(20, 0, 0);
  std::vector<double> d(50000);
  for (double& v : d) v = sample_overshoot_exact(0.5, 2.0, rng).delta;
  CHECK(ks_one_sample(d, [](double x) { return overshoot_cdf(0.5, 2.0, x); }).statistic < ks1(d.size()));
  CHECK_THROWS_AS(sample_overshoot_exact(0.5, 0.0, rng), ParameterError);
}

TEST_CASE("grid overshoot reads the first value at or above the level") {
  SubordinatorGrid g{0.5, 1.0, {0.0, 0.4, 1.3, 2.0}};
  const OvershootSample o = overshoot_from_grid(g, 1.0);
  CHECK(o.delta == doctest::Approx(0.3));
  CHECK(o.method == OvershootMethod::grid);
  CHECK_THROWS_AS(overshoot_from_grid(g, 3.0), GridExhausted);
}

TEST_CASE("Hoelder modulus") {
  MLPath flat{0.5, {0.0, 0.1, 0.2, 0.3}, {1.0, 1.0, 1.0, 1.0}, 0.1};
  CHECK(holder_modulus(flat, 1.0) == 0.0);

  MLPath step{0.5, {0.0, 0.25}, {0.0, 1.0}, 0.25};
  CHECK(holder_modulus(step, 0.0) == doctest::Approx(2.0));  // 1 / 0.25^{1/2}

  MLPath one{0.5, {0.0}, {0.0}, 0.1};
  CHECK_THROWS_AS(holder_modulus(one, 1.0), ParameterError);
}
