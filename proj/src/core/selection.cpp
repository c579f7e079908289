#include "kary/selection.hpp"

#include "kary/error.hpp"
#include "kary/hash.hpp"

namespace kary {

RecombinationCandidate::RecombinationCandidate(std::vector<CandidateEntry> entries)
    : entries_(std::move(entries)) {
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i - 1].index >= entries_[i].index) {
      throw InvalidArgument("candidate indices must be strictly increasing");
    }
  }
}

std::vector<RecombinationCandidate> combine(const Fragment& a, const Fragment& b) {
  if (a.index == b.index) return {};
  CandidateEntry ea{a.index, sha256(a.slice)};
  CandidateEntry eb{b.index, sha256(b.slice)};
  if (ea.index > eb.index) std::swap(ea, eb);
  return {RecombinationCandidate({ea, eb})};
}

bool is_member(const RecombinationCandidate& candidate, const PayloadManifest& manifest) {
  for (const auto& e : candidate.entries()) {
    if (e.index < 1 || e.index > manifest.slice_digests.size()) return false;
    if (manifest.slice_digests[e.index - 1] != e.slice_digest) return false;
  }
  return true;
}

bool relate(const Fragment& a, const Fragment& b, const PayloadManifest& manifest) {
  for (const auto& w : combine(a, b)) {
    if (is_member(w, manifest)) return true;
  }
  return false;
}

}  // namespace kary
