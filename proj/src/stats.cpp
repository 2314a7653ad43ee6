#include "mlsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mlsim/error.hpp"

namespace mlsim {

Ecdf::Ecdf(std::vector<double> sample) : sorted_(std::move(sample)) {
  require(!sorted_.empty(), "Ecdf: empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double kolmogorov_survival(double lambda) {
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double corrected_p_value(double statistic, double effective_n) {
  const double root = std::sqrt(effective_n);
  return kolmogorov_survival((root + 0.12 + 0.11 / root) * statistic);
}

// Inverse of the asymptotic Kolmogorov survival function by bisection.
double kolmogorov_quantile(double level) {
  double lo = 0.2;
  double hi = 5.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (kolmogorov_survival(mid) > level ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  require(!a.empty() && !b.empty(), "ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  // Past the end of one sample the remaining gap only shrinks.
  return {d, corrected_p_value(d, n * m / (n + m))};
}

KsResult ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf) {
  require(!sample.empty(), "ks_one_sample: empty sample");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return {d, corrected_p_value(d, n)};
}

double ks_critical_value(std::size_t n, std::size_t m, double level) {
  require(n > 0 && m > 0 && level > 0.0 && level < 1.0, "ks_critical_value: bad arguments");
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return kolmogorov_quantile(level) * std::sqrt((nn + mm) / (nn * mm));
}

double ks_critical_value(std::size_t n, double level) {
  require(n > 0 && level > 0.0 && level < 1.0, "ks_critical_value: bad arguments");
  return kolmogorov_quantile(level) / std::sqrt(static_cast<double>(n));
}

double quantile(std::span<const double> sample, double p) {
  require(!sample.empty(), "quantile: empty sample");
  require(p >= 0.0 && p <= 1.0, "quantile: p must lie in [0,1]");
  std::vector<double> x(sample.begin(), sample.end());
  const double h = p * static_cast<double>(x.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, x.size() - 1);
  std::nth_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(lo), x.end());
  const double xlo = x[lo];
  double xhi = xlo;
  if (hi != lo) xhi = *std::min_element(x.begin() + static_cast<std::ptrdiff_t>(lo) + 1, x.end());
  return xlo + (h - static_cast<double>(lo)) * (xhi - xlo);
}

Estimate mean_with_se(std::span<const double> sample) {
  require(!sample.empty(), "mean_with_se: empty sample");
  const double n = static_cast<double>(sample.size());
  const double mean = std::accumulate(sample.begin(), sample.end(), 0.0) / n;
  if (sample.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : sample) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

Estimate hill_tail_index(std::span<const double> sample, std::size_t k) {
  require(k >= 2 && k < sample.size(), "hill_tail_index: need 2 <= k < sample size");
  std::vector<double> x(sample.begin(), sample.end());
  std::nth_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k), x.end(),
                   std::greater<>());
  const double threshold = x[k];
  require(threshold > 0.0, "hill_tail_index: order statistic k+1 must be positive");
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += std::log(x[i] / threshold);
  const double alpha = static_cast<double>(k) / sum;
  return {alpha, alpha / std::sqrt(static_cast<double>(k))};
}

double selfsim_exponent(const std::map<double, std::vector<double>>& samples_by_scale) {
  require(samples_by_scale.size() >= 3, "selfsim_exponent: need at least three scales");
  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto& [scale, sample] : samples_by_scale) {
    require(scale > 0.0, "selfsim_exponent: scales must be positive");
    const double iqr = quantile(sample, 0.75) - quantile(sample, 0.25);
    if (!(iqr > 0.0)) throw ParameterError("selfsim_exponent: degenerate sample");
    lx.push_back(std::log(scale));
    ly.push_back(std::log(iqr));
  }
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  require(sxx > 0.0, "selfsim_exponent: scales must differ");
  return sxy / sxx;
}

bool strictly_decreasing(std::span<const double> values) {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] < values[i - 1])) return false;
  return true;
}

bool non_increasing(std::span<const double> values) {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[i - 1]) return false;
  return true;
}

}  // namespace mlsim
