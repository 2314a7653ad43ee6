#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mlsim {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for replicate `index` of stream `stream` under `master`.
/// The rule is fixed so results do not depend on scheduling:
///   seed = splitmix64(splitmix64(master ^ splitmix64(stream)) + index)
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                    std::uint64_t index) noexcept {
  return splitmix64(splitmix64(master ^ splitmix64(stream)) + index);
}

inline constexpr const char* kSeedRule =
    "seed(stream, r) = splitmix64(splitmix64(master ^ splitmix64(stream)) + r); engine mt19937_64";

inline Rng make_rng(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  return Rng(derive_seed(master, stream, index));
}

/// Uniform draw on the open interval (0,1).
inline double uniform_open(Rng& rng) {
  // 53 random bits, shifted by half an ulp so 0 is never returned.
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline double standard_exponential(Rng& rng) { return -std::log(uniform_open(rng)); }

inline double standard_gamma(double shape, Rng& rng) {
  std::gamma_distribution<double> g(shape, 1.0);
  double x = g(rng);
  while (x <= 0.0) x = g(rng);
  return x;
}

/// Beta(a, b) via the gamma ratio.
inline double beta_variate(double a, double b, Rng& rng) {
  const double x = standard_gamma(a, rng);
  const double y = standard_gamma(b, rng);
  return x / (x + y);
}

inline double standard_normal(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return n(rng);
}

inline double fair_sign(Rng& rng) { return (rng() >> 63) ? 1.0 : -1.0; }

}  // namespace mlsim
