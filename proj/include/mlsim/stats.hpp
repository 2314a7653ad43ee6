#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "mlsim/random.hpp"

namespace mlsim {

class RenewalChain;

/// Right-continuous empirical distribution function.
class Ecdf {
 public:
  explicit Ecdf(std::vector<double> sample);

  double operator()(double x) const;
  std::size_t size() const { return sorted_.size(); }
  const std::vector<double>& sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov distance; asymptotic p-value with the
/// effective-size correction (sqrt(ne) + 0.12 + 0.11/sqrt(ne)).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// One-sample distance sup |F_n - F| against a continuous CDF.
KsResult ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf);

/// Kolmogorov survival function Q(lambda) = 2 sum (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_survival(double lambda);

/// Asymptotic two-sample critical value at the given level.
double ks_critical_value(std::size_t n, std::size_t m, double level);

/// Asymptotic one-sample critical value at the given level.
double ks_critical_value(std::size_t n, double level);

/// Linear-interpolation sample quantile (Hyndman-Fan type 7).
double quantile(std::span<const double> sample, double p);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Sample mean and its standard error.
Estimate mean_with_se(std::span<const double> sample);

/// Hill estimator on the top-k order statistics of a positive sample:
/// alpha = 1 / mean(log(X_(i) / X_(k+1))), SE = alpha / sqrt(k).
Estimate hill_tail_index(std::span<const double> sample, std::size_t k);

/// Slope of log(q75 - q25) against log(scale); needs at least three scales.
double selfsim_exponent(const std::map<double, std::vector<double>>& samples_by_scale);

/// True when every element is strictly smaller than its predecessor.
bool strictly_decreasing(std::span<const double> values);

/// True when no element exceeds its predecessor.
bool non_increasing(std::span<const double> values);

/// Law of T_n^{(L)} / n against the limit CDF (x/L)^{1-beta}.
struct LinearTimeReport {
  std::size_t n = 0;
  double L = 1.0;
  KsResult ks;            // sampled T_n / n versus the limit CDF
  double exact_distance = 0.0;  // sup distance of the exact pmf's CDF from the limit
};

/// Samples T_n^{(L)} from p_n(m) proportional to mu(A_m) = pi_m, m = 1..nL.
LinearTimeReport t_inf_law_check(const RenewalChain& chain, std::size_t n, std::size_t L,
                                 std::size_t replicates, Rng& rng);

}  // namespace mlsim
