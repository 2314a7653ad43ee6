#pragma once

#include <cstdint>

namespace mlsim {

inline constexpr double kPi = 3.14159265358979323846;

/// Tail sum  sum_{k >= m} k^{-s}  for s > 1, m >= 1 (Euler-Maclaurin, abs. error < 1e-13).
double zeta_tail(double s, std::uint64_t m);

/// Riemann zeta for s > 1.
double riemann_zeta(double s);

/// Euler beta function B(a, b) for a, b > 0.
double beta_function(double a, double b);

/// The alpha-stable tail constant (int_0^inf x^{-alpha} sin x dx)^{-1}, 0 < alpha < 2.
double c_alpha(double alpha);

/// Standard normal CDF.
double normal_cdf(double x);

}  // namespace mlsim
