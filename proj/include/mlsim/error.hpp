#pragma once

#include <stdexcept>
#include <string>

namespace mlsim {

/// A parameter lies outside the domain documented for the operation.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A subordinator grid ended before reaching the requested level.
/// Callers extend the grid (see extend_subordinator_grid) and retry.
class GridExhausted : public std::runtime_error {
 public:
  GridExhausted(double level, double reached)
      : std::runtime_error("subordinator grid exhausted: reached " + std::to_string(reached) +
                           " < requested level " + std::to_string(level) + "; extend grid"),
        level_(level),
        reached_(reached) {}

  double level() const noexcept { return level_; }
  double reached() const noexcept { return reached_; }

 private:
  double level_;
  double reached_;
};

/// An iterative numerical routine failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

}  // namespace mlsim
