#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kary/bytes.hpp"

namespace kary {

/// Execution class of a k-ary code. Values are the wire codes.
enum class ClassCode : std::uint8_t {
  kIA = 0x00,  // sequential, every part references every other
  kIB = 0x01,  // sequential, no part references another
  kIC = 0x02,  // sequential, each part references its successor
  kII = 0x03,  // parallel, all parts active at once
};

enum class KeyScheme : std::uint8_t { kXorSplit, kShamir };
enum class PartitionStrategy : std::uint8_t { kContiguous, kInterleave };

std::string_view to_string(ClassCode c);
std::string_view to_string(KeyScheme s);
std::string_view to_string(PartitionStrategy s);
ClassCode class_code_from_string(std::string_view s);
KeyScheme key_scheme_from_string(std::string_view s);
PartitionStrategy partition_strategy_from_string(std::string_view s);

bool is_sequential(ClassCode c);

inline constexpr std::size_t kNonceSize = 12;
inline constexpr std::size_t kKeySize = 32;
inline constexpr unsigned kMaxFragments = 255;
inline constexpr std::string_view kManifestExtension = ".kmanifest.json";

using Nonce = std::array<std::uint8_t, kNonceSize>;

/// Out-of-band description of a fragmented payload: the set of valid
/// recombinations is induced by the ordered slice digests.
struct PayloadManifest {
  static constexpr unsigned kVersion = 1;

  unsigned version = kVersion;
  unsigned k = 0;
  unsigned threshold = 0;
  ClassCode class_code = ClassCode::kIB;
  KeyScheme key_scheme = KeyScheme::kShamir;
  PartitionStrategy partition_strategy = PartitionStrategy::kContiguous;
  // Reserved for randomized strategies; must be 0 for the shipped ones.
  std::uint64_t partition_seed = 0;
  Nonce nonce{};
  std::vector<Digest> slice_digests;
  Digest ciphertext_digest{};
  Digest plaintext_digest{};

  /// Throws InvalidArgument if any manifest invariant is violated.
  void validate() const;

  std::string to_json() const;
  /// Strict: canonical form, exact key set, valid invariants. Throws FormatError.
  static PayloadManifest from_json(std::string_view text);

  friend bool operator==(const PayloadManifest&, const PayloadManifest&) = default;
};

}  // namespace kary
