#pragma once

#include <cstdint>
#include <vector>

#include "kary/bytes.hpp"
#include "kary/fragment.hpp"
#include "kary/manifest.hpp"

namespace kary {

struct CandidateEntry {
  std::uint8_t index = 0;
  Digest slice_digest{};

  friend bool operator==(const CandidateEntry&, const CandidateEntry&) = default;
};

/// An ordered combination of fragment slices. Indices strictly increase.
class RecombinationCandidate {
 public:
  /// Throws InvalidArgument unless indices are strictly increasing.
  explicit RecombinationCandidate(std::vector<CandidateEntry> entries);

  const std::vector<CandidateEntry>& entries() const noexcept { return entries_; }

  friend bool operator==(const RecombinationCandidate&, const RecombinationCandidate&) = default;

 private:
  std::vector<CandidateEntry> entries_;
};

/// The selection of two fragments: the index-ordered pairings of their
/// (index, slice digest) entries. Empty when both carry the same index.
std::vector<RecombinationCandidate> combine(const Fragment& a, const Fragment& b);

/// True iff every entry matches the manifest's digest at its index. A partial
/// candidate is a member when all of its entries match.
bool is_member(const RecombinationCandidate& candidate, const PayloadManifest& manifest);

/// a R_m b: some selection of a and b is a member of m's language.
bool relate(const Fragment& a, const Fragment& b, const PayloadManifest& manifest);

}  // namespace kary
