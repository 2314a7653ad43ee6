#include "mlsim/boole.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mlsim/error.hpp"
#include "mlsim/special.hpp"

namespace mlsim {

namespace {

// Antiderivative of the invariant density.
double boole_cdf(double x) { return -1.0 / x + 1.0 / (1.0 - x); }

// y below this folds onto (0,1/2) after one step; above it the image crosses 1/2.
const double kFoldPoint = (3.0 - std::sqrt(5.0)) / 2.0;

double left_branch(double x) { return x * (1.0 - x) / (1.0 - x - x * x); }

}  // namespace

double boole_map(double x) {
  if (!(x > 0.0 && x < 1.0) || x == 0.5)
    throw ParameterError("boole_map: x must lie in (0,1/2) u (1/2,1)");
  if (x < 0.5) return left_branch(x);
  return 1.0 - left_branch(1.0 - x);
}

double boole_measure_interval(double a, double b) {
  require(a > 0.0 && b < 1.0 && a < b, "boole_measure_interval: need 0 < a < b < 1");
  return boole_cdf(b) - boole_cdf(a);
}

double boole_left_inverse(double y) {
  // Smaller root of x^2 (1-y) - x (1+y) + y = 0, rationalized.
  return 2.0 * y / ((1.0 + y) + std::sqrt(1.0 - 2.0 * y + 5.0 * y * y));
}

double boole_folded_step(double y) {
  const double d = 1.0 - y - y * y;
  // 1 - T(y) = (1 - 2y) / (1 - y - y^2) avoids cancellation near 1.
  return y < kFoldPoint ? y * (1.0 - y) / d : (1.0 - 2.0 * y) / d;
}

BooleModel::BooleModel(double eps, std::size_t ladder_length) : eps_(eps) {
  require(eps > 0.0 && eps < 0.25, "BooleModel: eps must lie in (0, 1/4)");
  require(ladder_length >= 1, "BooleModel: ladder_length must be >= 1");
  measure_a_ = 2.0 * (boole_cdf(0.5) - boole_cdf(eps));
  ladder_.reserve(ladder_length + 1);
  ladder_.push_back(eps);
  constexpr double kTol = 1e-14;
  for (std::size_t k = 1; k <= ladder_length; ++k) {
    const double target = ladder_.back();
    // T(x) - x = x^3 / (1 - x - x^2) is increasing, so the root lies in [hi - gap(hi), hi].
    double hi = target;
    double lo = target - target * target * target / (1.0 - target - target * target);
    if (!(left_branch(lo) <= target && left_branch(hi) >= target)) {
      std::ostringstream msg;
      msg << "BooleModel: ladder bracket failed at k=" << k << " target=" << target
          << " T(lo)=" << left_branch(lo) << " T(hi)=" << left_branch(hi);
      throw NumericError(msg.str());
    }
    int iterations = 0;
    while (hi - lo > kTol) {
      const double mid = 0.5 * (lo + hi);
      (left_branch(mid) < target ? lo : hi) = mid;
      if (++iterations > 200) {
        std::ostringstream msg;
        msg << "BooleModel: bisection did not converge at k=" << k << " width=" << hi - lo;
        throw NumericError(msg.str());
      }
    }
    ladder_.push_back(0.5 * (lo + hi));
  }
}

double BooleModel::ladder(std::size_t k) const {
  require(k < ladder_.size(), "BooleModel::ladder: index beyond ladder length");
  return ladder_[k];
}

double BooleModel::wandering_rate(std::size_t n) const {
  require(n >= 1 && n <= ladder_.size(), "BooleModel::wandering_rate: n outside [1, ladder+1]");
  const double u = ladder_[n - 1];
  return measure_a_ + 2.0 * (boole_cdf(eps_) - boole_cdf(u));
}

double BooleModel::a_seq(std::size_t n) const {
  const double g = std::tgamma(2.0 - kBeta) * std::tgamma(1.0 + kBeta);
  return static_cast<double>(n) / (g * wandering_rate(n));
}

double BooleModel::sample_start(Rng& rng) const {
  // Left half: F(x) = F(eps) (1 - U) solved for x in (eps, 1/2).
  const double c = boole_cdf(eps_) * (1.0 - uniform_open(rng));
  const double x = 2.0 / ((2.0 - c) + std::sqrt(c * c + 4.0));
  return (rng() >> 63) ? x : 1.0 - x;
}

namespace {

bool at_branch_endpoint(double y) { return !(y > 0.0 && y < 0.5); }

}  // namespace

std::vector<std::size_t> BooleModel::occupation(double x0, std::size_t n) const {
  require(x0 > 0.0 && x0 < 1.0 && x0 != 0.5, "BooleModel::occupation: x0 outside the domain");
  // Iterating the folded coordinate is the same orbit as boole_map up to the
  // symmetry x -> 1-x, without the loss of precision near x = 1.
  std::vector<std::size_t> path(n + 1, 0);
  double y = std::min(x0, 1.0 - x0);
  std::size_t visits = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    y = boole_folded_step(y);
    if (at_branch_endpoint(y)) throw NumericError("BooleModel::occupation: orbit hit a branch endpoint");
    if (y > eps_) ++visits;
    path[k] = visits;
  }
  return path;
}

BooleModel::OrbitCounts BooleModel::occupation_counts(const std::vector<std::size_t>& checkpoints,
                                                      Rng& rng) const {
  OrbitCounts out;
  out.counts.assign(checkpoints.size(), 0);
  if (checkpoints.empty()) return out;
  const double eps = eps_;
  for (;;) {
    const double x0 = sample_start(rng);
    double y = std::min(x0, 1.0 - x0);
    std::size_t visits = 0;
    std::size_t k = 0;
    bool hit = false;
    for (std::size_t c = 0; c < checkpoints.size() && !hit; ++c) {
      const std::size_t stop = checkpoints[c];
      for (; k < stop; ++k) {
        y = boole_folded_step(y);
        if (at_branch_endpoint(y)) {
          hit = true;
          break;
        }
        visits += (y > eps) ? 1 : 0;
      }
      out.counts[c] = visits;
    }
    if (!hit) return out;
    ++out.restarts;
  }
}

}  // namespace mlsim
