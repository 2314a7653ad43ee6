#pragma once

#include <string>
#include <string_view>

#include "mlsim/error.hpp"

namespace mlsim {

/// Symmetric (SaS) construction, or the totally skewed positive one (alpha < 1).
enum class Variant { symmetric, positive };

inline std::string_view to_string(Variant v) {
  return v == Variant::symmetric ? "symmetric" : "positive";
}

inline Variant parse_variant(std::string_view s) {
  if (s == "symmetric") return Variant::symmetric;
  if (s == "positive") return Variant::positive;
  throw ParameterError("unknown variant '" + std::string(s) + "' (symmetric|positive)");
}

}  // namespace mlsim
