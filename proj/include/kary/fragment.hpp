#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kary/bytes.hpp"
#include "kary/error.hpp"
#include "kary/manifest.hpp"
#include "kary/secret_share.hpp"

namespace kary {

/// One of the k fragment files.
struct Fragment {
  std::uint8_t index = 0;  // 1..k
  std::uint8_t k = 0;
  ClassCode class_code = ClassCode::kIB;
  std::uint8_t share_x = 0;
  Bytes share_y;
  Bytes slice;
  // Digests of other fragments' slices, per the class rule.
  std::vector<Digest> dep_digests;

  friend bool operator==(const Fragment&, const Fragment&) = default;
};

enum class FragmentParseErrorKind {
  kBadMagic,
  kUnsupportedVersion,
  kTruncated,
  kLengthOverrun,
  kInvalidField,
  kTrailingData,
};

class FragmentParseError : public FormatError {
 public:
  FragmentParseError(FragmentParseErrorKind kind, const std::string& what)
      : FormatError(what), kind_(kind) {}
  FragmentParseErrorKind kind() const noexcept { return kind_; }

 private:
  FragmentParseErrorKind kind_;
};

inline constexpr std::array<std::uint8_t, 4> kFragmentMagic{0x4B, 0x41, 0x52, 0x59};  // "KARY"
inline constexpr std::uint8_t kFragmentVersion = 0x01;

/// Indices (1-based) of the fragments whose slice digests fragment `index`
/// must embed: all others for I_A, the successor for I_C, none otherwise.
std::vector<std::uint8_t> dependency_indices(ClassCode c, unsigned index, unsigned k);

Bytes serialize_fragment(const Fragment& f);
Fragment parse_fragment(ByteView data);

/// Assembles the k serialized fragments. slices[i] and shares[i] belong to
/// fragment i+1.
std::vector<Bytes> build_fragments(std::span<const Bytes> slices,
                                   std::span<const SecretShare> shares,
                                   const PayloadManifest& manifest);

}  // namespace kary
