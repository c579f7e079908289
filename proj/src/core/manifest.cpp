#include "kary/manifest.hpp"

#include "kary/canonical_json.hpp"
#include "kary/error.hpp"

namespace kary {

std::string_view to_string(ClassCode c) {
  switch (c) {
    case ClassCode::kIA: return "I_A";
    case ClassCode::kIB: return "I_B";
    case ClassCode::kIC: return "I_C";
    case ClassCode::kII: return "II";
  }
  throw InvalidArgument("unknown class code");
}

std::string_view to_string(KeyScheme s) {
  return s == KeyScheme::kShamir ? "SHAMIR" : "XOR_SPLIT";
}

std::string_view to_string(PartitionStrategy s) {
  return s == PartitionStrategy::kContiguous ? "CONTIGUOUS" : "INTERLEAVE";
}

ClassCode class_code_from_string(std::string_view s) {
  if (s == "I_A") return ClassCode::kIA;
  if (s == "I_B") return ClassCode::kIB;
  if (s == "I_C") return ClassCode::kIC;
  if (s == "II") return ClassCode::kII;
  throw InvalidArgument("unknown class code '" + std::string(s) + "'");
}

KeyScheme key_scheme_from_string(std::string_view s) {
  if (s == "SHAMIR") return KeyScheme::kShamir;
  if (s == "XOR_SPLIT") return KeyScheme::kXorSplit;
  throw InvalidArgument("unknown key scheme '" + std::string(s) + "'");
}

PartitionStrategy partition_strategy_from_string(std::string_view s) {
  if (s == "CONTIGUOUS") return PartitionStrategy::kContiguous;
  if (s == "INTERLEAVE") return PartitionStrategy::kInterleave;
  throw InvalidArgument("unknown partition strategy '" + std::string(s) + "'");
}

bool is_sequential(ClassCode c) { return c != ClassCode::kII; }

void PayloadManifest::validate() const {
  if (version != kVersion) throw InvalidArgument("unsupported manifest version");
  if (k < 1 || k > kMaxFragments) throw InvalidArgument("k must be in 1..255");
  if (threshold < 1 || threshold > k) throw InvalidArgument("threshold must be in 1..k");
  if (key_scheme == KeyScheme::kXorSplit && threshold != k) {
    throw InvalidArgument("XOR_SPLIT requires threshold == k");
  }
  if (slice_digests.size() != k) throw InvalidArgument("need exactly k slice digests");
  if (partition_seed != 0) throw InvalidArgument("partition seed is reserved and must be 0");
}

std::string PayloadManifest::to_json() const {
  json digests = json::array();
  for (const auto& d : slice_digests) digests.push_back(to_hex(d));
  json doc = {
      {"version", version},
      {"k", k},
      {"threshold", threshold},
      {"class_code", to_string(class_code)},
      {"key_scheme", to_string(key_scheme)},
      {"partition_strategy", to_string(partition_strategy)},
      {"partition_seed", partition_seed},
      {"nonce", to_hex(nonce)},
      {"slice_digests", std::move(digests)},
      {"ciphertext_digest", to_hex(ciphertext_digest)},
      {"plaintext_digest", to_hex(plaintext_digest)},
  };
  return to_canonical(doc);
}

PayloadManifest PayloadManifest::from_json(std::string_view text) {
  json doc = parse_canonical(text);
  require_exact_keys(doc, {"version", "k", "threshold", "class_code", "key_scheme",
                           "partition_strategy", "partition_seed", "nonce", "slice_digests",
                           "ciphertext_digest", "plaintext_digest"});
  PayloadManifest m;
  try {
    m.version = static_cast<unsigned>(require_uint(doc, "version"));
    std::uint64_t k = require_uint(doc, "k");
    std::uint64_t t = require_uint(doc, "threshold");
    if (k > kMaxFragments || t > kMaxFragments) throw FormatError("k/threshold out of range");
    m.k = static_cast<unsigned>(k);
    m.threshold = static_cast<unsigned>(t);
    m.class_code = class_code_from_string(require_string(doc, "class_code"));
    m.key_scheme = key_scheme_from_string(require_string(doc, "key_scheme"));
    m.partition_strategy = partition_strategy_from_string(require_string(doc, "partition_strategy"));
    m.partition_seed = require_uint(doc, "partition_seed");
    Bytes nonce = from_hex(require_string(doc, "nonce"));
    if (nonce.size() != kNonceSize) throw FormatError("nonce must be 12 bytes");
    std::copy(nonce.begin(), nonce.end(), m.nonce.begin());
    const json& digests = require_field(doc, "slice_digests");
    if (!digests.is_array()) throw FormatError("slice_digests must be an array");
    for (const auto& d : digests) {
      if (!d.is_string()) throw FormatError("slice digest must be a string");
      m.slice_digests.push_back(digest_from_hex(d.get<std::string>()));
    }
    m.ciphertext_digest = digest_from_hex(require_string(doc, "ciphertext_digest"));
    m.plaintext_digest = digest_from_hex(require_string(doc, "plaintext_digest"));
    m.validate();
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("invalid manifest: ") + e.what());
  }
  return m;
}

}  // namespace kary
