#pragma once

#include <cstdint>

#include "kary/bytes.hpp"

namespace kary {

/// One share of a byte-string secret. `x` is the abscissa (never 0); `y` holds
/// one ordinate per secret byte. XOR shares reuse the layout with x = index.
struct SecretShare {
  std::uint8_t x = 0;
  Bytes y;

  friend bool operator==(const SecretShare&, const SecretShare&) = default;
};

}  // namespace kary
