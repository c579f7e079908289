#include "kary/random.hpp"

#include <openssl/rand.h>

#include <stdexcept>

namespace kary {

void SeededRandom::fill(std::span<std::uint8_t> out) {
  for (auto& b : out) {
    if (buffered_ == 0) {
      buffer_ = engine_();
      buffered_ = 8;
    }
    b = static_cast<std::uint8_t>(buffer_);
    buffer_ >>= 8;
    --buffered_;
  }
}

void SystemRandom::fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    throw std::runtime_error("OS entropy source unavailable");
  }
}

}  // namespace kary
