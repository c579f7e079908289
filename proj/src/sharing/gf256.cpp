#include "kary/gf256.hpp"

#include <array>

#include "kary/error.hpp"

namespace kary::gf256 {
namespace {

struct Tables {
  std::array<std::uint8_t, 512> exp{};
  std::array<std::uint8_t, 256> log{};
};

// 0x03 generates the multiplicative group under 0x11B (0x02 does not).
constexpr Tables make_tables() {
  Tables t;
  unsigned x = 1;
  for (unsigned i = 0; i < 255; ++i) {
    t.exp[i] = static_cast<std::uint8_t>(x);
    t.log[x] = static_cast<std::uint8_t>(i);
    unsigned doubled = x << 1;
    if (doubled & 0x100) doubled ^= kPolynomial;
    x ^= doubled;  // x * 3 = x * 2 + x
  }
  for (unsigned i = 255; i < t.exp.size(); ++i) t.exp[i] = t.exp[i - 255];
  return t;
}

constexpr Tables kTables = make_tables();

}  // namespace

std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
  if (a == 0 || b == 0) return 0;
  return kTables.exp[kTables.log[a] + kTables.log[b]];
}

std::uint8_t inv(std::uint8_t a) {
  if (a == 0) throw InvalidArgument("zero has no inverse in GF(2^8)");
  return kTables.exp[255 - kTables.log[a]];
}

std::uint8_t div(std::uint8_t a, std::uint8_t b) {
  if (b == 0) throw InvalidArgument("division by zero in GF(2^8)");
  if (a == 0) return 0;
  return kTables.exp[kTables.log[a] + 255 - kTables.log[b]];
}

}  // namespace kary::gf256
