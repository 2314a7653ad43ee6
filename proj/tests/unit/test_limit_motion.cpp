#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "mlsim/error.hpp"
#include "mlsim/limit_motion.hpp"
#include "mlsim/special.hpp"
#include "mlsim/stable.hpp"

using namespace mlsim;

TEST_CASE("C_alpha against a Fourier quadrature of x^{-alpha} sin x") {
  boost::math::quadrature::ooura_fourier_sin<double> integrator;
  for (double alpha : {0.5, 1.0, 1.5}) {
    // Split at 1. On (0,1) integrate the sine series term by term:
    // sum_k (-1)^k / ((2k+1)! (2k+2-alpha)).
    double near = 0.0;
    double fact = 1.0;
    for (int k = 0; k < 15; ++k) {
      if (k > 0) fact *= (2.0 * k) * (2.0 * k + 1.0);
      near += (k % 2 ? -1.0 : 1.0) / (fact * (2.0 * k + 2.0 - alpha));
    }
    const auto shifted = [alpha](double x) { return std::pow(x + 1.0, -alpha); };
    // int_1^inf x^{-a} sin x = int_0^inf (y+1)^{-a} (sin y cos 1 + cos y sin 1) dy.
    boost::math::quadrature::ooura_fourier_cos<double> cos_integrator;
    const double s = integrator.integrate(shifted, 1.0).first;
    const double c = cos_integrator.integrate(shifted, 1.0).first;
    const double integral = near + s * std::cos(1.0) + c * std::sin(1.0);
    CHECK(c_alpha(alpha) == doctest::Approx(1.0 / integral).epsilon(1e-6));
  }
  CHECK(c_alpha(1.0 - 1e-7) == doctest::Approx(c_alpha(1.0)).epsilon(1e-6));
  CHECK(c_alpha(1.0 + 1e-7) == doctest::Approx(c_alpha(1.0)).epsilon(1e-6));
}

TEST_CASE("the control measure nu") {
  CHECK(nu_mass(0.3, 1.0) == 1.0);
  CHECK(nu_mass(0.3, 2.0) == doctest::Approx(std::pow(2.0, 0.7)));
  Rng rng = make_rng(21, 0, 0);
  std::vector<double> x(50000);
  for (double& v : x) v = sample_nu_restricted(0.3, 2.0, rng);
  const auto cdf = [](double v) { return v <= 0 ? 0.0 : v >= 2 ? 1.0 : std::pow(v / 2.0, 0.7); };
  CHECK(ks_one_sample(x, cdf).statistic < ks_critical_value(x.size(), 0.01));
}

TEST_CASE("scale of Y(t)") {
  const double alpha = 1.5, beta = 0.4;
  const double m = ml_moment(beta, 1.0, alpha);
  const double h = self_similarity_exponent(alpha, beta);
  CHECK(h == doctest::Approx(0.4 + 0.6 / 1.5));
  CHECK(y_scale(alpha, beta, 3.0, m) == doctest::Approx(std::pow(3.0, h) * y_scale(alpha, beta, 1.0, m)));
  CHECK(y_scale(alpha, beta, 0.0, m) == 0.0);
  const double base = 0.6 * std::tgamma(0.6) * std::tgamma(1.6) / std::tgamma(2.2) * m;
  CHECK(y_scale(alpha, beta, 1.0, m) == doctest::Approx(std::pow(base, 1.0 / alpha)));
  CHECK(c_alpha_beta(alpha, beta, m) == doctest::Approx(std::tgamma(1.4) * std::pow(base, 1.0 / alpha)));
}

TEST_CASE("E M(1)^alpha by Monte Carlo") {
  Rng rng = make_rng(22, 0, 0);
  // E M^alpha = Gamma(1+alpha) / Gamma(1+alpha beta): 2/Gamma(1.5) at alpha = 1; 2 at alpha = 2, beta = 1/2.
  const Estimate one = estimate_ml_alpha_moment(1.0, 0.5, 40000, rng);
  CHECK(std::abs(one.value - 2.0 / std::sqrt(kPi)) < 4.0 * one.std_error);
  std::vector<double> sq(40000);
  for (double& v : sq) v = std::pow(sample_ml_marginal(0.5, 1.0, rng), 2.0);
  const Estimate two = mean_with_se(sq);
  CHECK(std::abs(two.value - 2.0) < 4.0 * two.std_error);

  const Estimate small = estimate_ml_alpha_moment(1.5, 0.5, 10000, rng);
  const Estimate large = estimate_ml_alpha_moment(1.5, 0.5, 160000, rng);
  CHECK(large.std_error / small.std_error == doctest::Approx(0.25).epsilon(0.25));
  CHECK_THROWS_AS(estimate_ml_alpha_moment(1.5, 0.5, 100, rng), ParameterError);

  const StableConstants k = stable_constants(1.5, 0.5, 10000, rng);
  CHECK(k.c_alpha == c_alpha(1.5));
  CHECK(k.c_alpha_beta == c_alpha_beta(1.5, 0.5, k.ml_alpha_moment.value));
}

TEST_CASE("Y paths") {
  Rng rng = make_rng(23, 0, 0);
  const std::vector<double> ts = {0.0, 0.25, 0.5, 1.0};
  const YPath y = simulate_Y(1.5, 0.5, ts, 500, Variant::symmetric, rng);
  CHECK(y.values[0] == 0.0);
  CHECK(y.values.size() == ts.size());

  for (int r = 0; r < 50; ++r) {
    const YPath p = simulate_Y(0.8, 0.5, ts, 500, Variant::positive, rng);
    CHECK(p.values[0] == 0.0);
    for (std::size_t j = 1; j < ts.size(); ++j) CHECK(p.values[j] >= p.values[j - 1]);
  }
  CHECK_THROWS_AS(simulate_Y(1.5, 0.5, ts, 500, Variant::positive, rng), ParameterError);
  const std::vector<double> unsorted = {1.0, 0.5};
  CHECK_THROWS_AS(simulate_Y(1.5, 0.5, unsorted, 500, Variant::symmetric, rng), ParameterError);
  CHECK_THROWS_AS(simulate_Y(1.5, 0.5, ts, 10, Variant::symmetric, rng), ParameterError);
  CHECK(default_series_length(1.5) == 5000);
  CHECK(default_series_length(0.8) == 2000);
}

TEST_CASE("symmetric stable sampler: characteristic function") {
  Rng rng = make_rng(24, 0, 0);
  for (double alpha : {0.7, 1.0, 1.5}) {
    const double sigma = 1.3;
    std::vector<double> x(100000);
    for (double& v : x) v = sample_sas(alpha, sigma, rng);
    for (double theta : {0.3, 1.0}) {
      std::vector<double> c(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) c[i] = std::cos(theta * x[i]);
      const Estimate e = mean_with_se(c);
      CHECK(std::abs(e.value - std::exp(-std::pow(sigma * theta, alpha))) < 4.0 * e.std_error);
    }
  }
}

TEST_CASE("totally skewed sampler: Laplace transform") {
  Rng rng = make_rng(25, 0, 0);
  const double alpha = 0.8, sigma = 0.7;
  std::vector<double> x(100000);
  for (double& v : x) v = sample_totally_skewed(alpha, sigma, rng);
  for (double lambda : {0.5, 2.0}) {
    std::vector<double> e(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) e[i] = std::exp(-lambda * x[i]);
    const Estimate m = mean_with_se(e);
    const double exact = std::exp(-std::pow(sigma * lambda, alpha) / std::cos(kPi * alpha / 2.0));
    CHECK(std::abs(m.value - exact) < 4.0 * m.std_error);
  }
}

TEST_CASE("Y marginals") {
  const std::vector<double> ts = {1.0};
  const std::size_t reps = 3000;
  const double crit = ks_critical_value(reps, reps, 0.01);

  SUBCASE("symmetric: Y(1) and -Y(1) agree, and match the SaS scale") {
    Rng rng = make_rng(26, 0, 0);
    std::vector<double> y(reps), neg(reps), ref(reps);
    for (std::size_t r = 0; r < reps; ++r) y[r] = simulate_Y(1.5, 0.5, ts, 2000, Variant::symmetric, rng).values[0];
    for (std::size_t r = 0; r < reps; ++r) neg[r] = -simulate_Y(1.5, 0.5, ts, 2000, Variant::symmetric, rng).values[0];
    const double sigma = y_scale(1.5, 0.5, 1.0, ml_moment(0.5, 1.0, 1.5));
    for (double& v : ref) v = sample_sas(1.5, sigma, rng);
    CHECK(ks_two_sample(y, neg).statistic < crit);
    CHECK(ks_two_sample(y, ref).statistic < crit);
  }
  SUBCASE("positive: the compensated series matches the skewed law") {
    Rng rng = make_rng(27, 0, 0);
    std::vector<double> y(reps), ref(reps);
    for (double& v : y) v = simulate_Y(0.8, 0.5, ts, 2000, Variant::positive, rng).values[0];
    const double sigma = y_scale(0.8, 0.5, 1.0, ml_moment(0.5, 1.0, 0.8));
    for (double& v : ref) v = sample_totally_skewed(0.8, sigma, rng);
    CHECK(ks_two_sample(y, ref).statistic < crit);
  }
}

TEST_CASE("stationary increments") {
  const std::vector<double> ts = {0.0, 0.5};
  const auto checks = check_stationary_increments(1.5, 0.5, ts, 1.0, 1000, 500, Variant::symmetric, 5, 1);
  REQUIRE(checks.size() == 2);
  CHECK(checks[0].ks.statistic == 0.0);
  CHECK(checks[1].ks.statistic < checks[1].critical);
  CHECK_THROWS_AS(check_stationary_increments(1.5, 0.5, ts, 0.0, 100, 500, Variant::symmetric, 5, 1),
                  ParameterError);
}
