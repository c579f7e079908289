#include "kary/block.hpp"

#include <bit>
#include <limits>

#include "kary/canonical_json.hpp"
#include "kary/error.hpp"
#include "kary/hash.hpp"

namespace kary {

Bytes block_header(const Block& b) {
  Bytes out;
  out.reserve(kBlockHeaderSize);
  append_u32_be(out, b.height);
  out.insert(out.end(), b.prev_hash.begin(), b.prev_hash.end());
  out.insert(out.end(), b.merkle_root.begin(), b.merkle_root.end());
  append_u64_be(out, b.timestamp);
  out.push_back(b.difficulty);
  append_u64_be(out, b.nonce);
  return out;
}

Digest block_hash(const Block& b) { return sha256d(block_header(b)); }

unsigned leading_zero_bits(const Digest& d) {
  unsigned bits = 0;
  for (std::uint8_t byte : d) {
    if (byte != 0) return bits + static_cast<unsigned>(std::countl_zero(byte));
    bits += 8;
  }
  return bits;
}

bool meets_difficulty(const Digest& d, unsigned difficulty) { return leading_zero_bits(d) >= difficulty; }

std::string block_to_json(const Block& b) {
  json txs = json::array();
  for (const auto& d : b.tx_digests) txs.push_back(to_hex(d));
  json doc = {
      {"height", b.height},
      {"prev_hash", to_hex(b.prev_hash)},
      {"merkle_root", to_hex(b.merkle_root)},
      {"timestamp", b.timestamp},
      {"difficulty", b.difficulty},
      {"nonce", b.nonce},
      {"tx_digests", std::move(txs)},
  };
  return to_canonical(doc);
}

Block block_from_json(std::string_view text) {
  json doc = parse_canonical(text);
  require_exact_keys(doc, {"height", "prev_hash", "merkle_root", "timestamp", "difficulty", "nonce",
                           "tx_digests"});
  Block b;
  std::uint64_t height = require_uint(doc, "height");
  if (height > std::numeric_limits<std::uint32_t>::max()) throw FormatError("block height out of range");
  b.height = static_cast<std::uint32_t>(height);
  b.prev_hash = digest_from_hex(require_string(doc, "prev_hash"));
  b.merkle_root = digest_from_hex(require_string(doc, "merkle_root"));
  b.timestamp = require_uint(doc, "timestamp");
  std::uint64_t difficulty = require_uint(doc, "difficulty");
  if (difficulty > 255) throw FormatError("difficulty out of range");
  b.difficulty = static_cast<std::uint8_t>(difficulty);
  b.nonce = require_uint(doc, "nonce");
  const json& txs = require_field(doc, "tx_digests");
  if (!txs.is_array()) throw FormatError("tx_digests must be an array");
  for (const auto& d : txs) {
    if (!d.is_string()) throw FormatError("tx digest must be a string");
    b.tx_digests.push_back(digest_from_hex(d.get<std::string>()));
  }
  return b;
}

}  // namespace kary
