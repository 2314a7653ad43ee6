#include "mlsim/special.hpp"

#include <array>
#include <cmath>

#include "mlsim/error.hpp"

namespace mlsim {

double zeta_tail(double s, std::uint64_t m) {
  require(s > 1.0, "zeta_tail: s must exceed 1");
  require(m >= 1, "zeta_tail: m must be >= 1");
  // Sum directly up to a start point large enough for the asymptotic tail.
  constexpr std::uint64_t kMinStart = 16;
  double direct = 0.0;
  std::uint64_t start = m;
  if (start < kMinStart) {
    for (std::uint64_t k = m; k < kMinStart; ++k) direct += std::pow(static_cast<double>(k), -s);
    start = kMinStart;
  }
  const double x = static_cast<double>(start);
  // B_{2j} / (2j)!
  constexpr std::array<double, 6> kB = {1.0 / 12.0,          -1.0 / 720.0,
                                        1.0 / 30240.0,       -1.0 / 1209600.0,
                                        1.0 / 47900160.0,    -691.0 / 1307674368000.0};
  double tail = std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
  double rising = s;                  // s (s+1) ... (s+2j-2)
  double power = std::pow(x, -s - 1.0);  // x^{-s-2j+1}
  for (std::size_t j = 0; j < kB.size(); ++j) {
    tail += kB[j] * rising * power;
    rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
    power /= x * x;
  }
  return direct + tail;
}

double riemann_zeta(double s) { return zeta_tail(s, 1); }

double beta_function(double a, double b) {
  require(a > 0.0 && b > 0.0, "beta_function: arguments must be positive");
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double c_alpha(double alpha) {
  require(alpha > 0.0 && alpha < 2.0, "c_alpha: alpha must lie in (0,2)");
  if (std::abs(alpha - 1.0) < 1e-9) return 2.0 / kPi;
  return (1.0 - alpha) / (std::tgamma(2.0 - alpha) * std::cos(kPi * alpha / 2.0));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace mlsim
