#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace kary {

/// Source of random bytes. Injected wherever randomness is consumed so that
/// tests and demos can replay exactly.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  std::uint8_t next_byte() {
    std::uint8_t b = 0;
    fill({&b, 1});
    return b;
  }
};

/// Deterministic generator (mt19937_64). Not suitable for real keys.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}
  void fill(std::span<std::uint8_t> out) override;

 private:
  std::mt19937_64 engine_;
  std::uint64_t buffer_ = 0;
  int buffered_ = 0;
};

/// OS-backed CSPRNG.
class SystemRandom final : public RandomSource {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

}  // namespace kary
