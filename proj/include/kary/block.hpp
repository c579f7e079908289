#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kary/bytes.hpp"

namespace kary {

struct Block {
  std::uint32_t height = 0;
  Digest prev_hash{};
  Digest merkle_root{};
  std::uint64_t timestamp = 0;
  std::uint8_t difficulty = 0;  // required leading zero bits of the block hash
  std::uint64_t nonce = 0;
  std::vector<Digest> tx_digests;

  friend bool operator==(const Block&, const Block&) = default;
};

/// height u32 | prev_hash | merkle_root | timestamp u64 | difficulty u8 | nonce u64,
/// integers big-endian.
inline constexpr std::size_t kBlockHeaderSize = 85;

Bytes block_header(const Block& b);

/// SHA-256(SHA-256(header)).
Digest block_hash(const Block& b);

unsigned leading_zero_bits(const Digest& d);
bool meets_difficulty(const Digest& d, unsigned difficulty);

std::string block_to_json(const Block& b);
/// Strict canonical parse. Throws FormatError.
Block block_from_json(std::string_view text);

}  // namespace kary
