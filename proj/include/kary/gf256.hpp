#pragma once

#include <cstdint>

namespace kary::gf256 {

/// Reduction polynomial x^8 + x^4 + x^3 + x + 1.
inline constexpr unsigned kPolynomial = 0x11B;

/// Addition and subtraction are both XOR.
constexpr std::uint8_t add(std::uint8_t a, std::uint8_t b) { return a ^ b; }

std::uint8_t mul(std::uint8_t a, std::uint8_t b);

/// Multiplicative inverse. Throws InvalidArgument for 0.
std::uint8_t inv(std::uint8_t a);

/// a / b. Throws InvalidArgument when b == 0.
std::uint8_t div(std::uint8_t a, std::uint8_t b);

}  // namespace kary::gf256
