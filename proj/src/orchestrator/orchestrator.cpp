#include "kary/orchestrator.hpp"

#include <algorithm>
#include <map>

#include <openssl/crypto.h>

#include "kary/aead.hpp"
#include "kary/canonical_json.hpp"
#include "kary/error.hpp"
#include "kary/hash.hpp"
#include "kary/partition.hpp"

namespace kary {
namespace {

// Zeroes the key on every exit path.
class KeyBuffer {
 public:
  explicit KeyBuffer(Bytes key) : key_(std::move(key)) {}
  ~KeyBuffer() { OPENSSL_cleanse(key_.data(), key_.size()); }
  KeyBuffer(const KeyBuffer&) = delete;
  KeyBuffer& operator=(const KeyBuffer&) = delete;
  ByteView view() const { return key_; }

 private:
  Bytes key_;
};

std::vector<std::uint8_t> indices_of(const std::vector<FragmentStatus>& statuses, bool failing) {
  std::vector<std::uint8_t> out;
  for (const auto& s : statuses) {
    if (s.valid() != failing) out.push_back(s.index);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::string_view to_string(ReceiptStatus s) {
  switch (s) {
    case ReceiptStatus::kValid: return "valid";
    case ReceiptStatus::kUnanchored: return "unanchored";
    case ReceiptStatus::kUnreadable: return "unreadable";
    case ReceiptStatus::kInvalid: return "invalid";
  }
  return "unknown";
}

std::string_view to_string(DependencyStatus s) {
  switch (s) {
    case DependencyStatus::kValid: return "valid";
    case DependencyStatus::kMismatch: return "mismatch";
    case DependencyStatus::kMissing: return "missing";
  }
  return "unknown";
}

std::string_view to_string(AssemblyErrorKind k) {
  switch (k) {
    case AssemblyErrorKind::kVerificationFailed: return "verification-failed";
    case AssemblyErrorKind::kInsufficientShares: return "insufficient-shares";
    case AssemblyErrorKind::kInsufficientSlices: return "insufficient-slices";
    case AssemblyErrorKind::kAuthenticationFailed: return "authentication-failed";
    case AssemblyErrorKind::kPlaintextDigestMismatch: return "plaintext-digest-mismatch";
  }
  return "unknown";
}

Production produce(ByteView payload, const ProduceParams& params, RandomSource& rng) {
  if (payload.empty()) throw InvalidArgument("payload must not be empty");

  PayloadManifest manifest;
  manifest.k = params.k;
  manifest.threshold = params.threshold == 0 ? params.k : params.threshold;
  manifest.class_code = params.class_code;
  manifest.key_scheme = params.key_scheme;
  manifest.partition_strategy = params.strategy;
  manifest.slice_digests.resize(params.k);  // placeholder so validate() can run
  manifest.validate();
  if (payload.size() + kTagSize < params.k) throw InvalidArgument("payload too short for k fragments");

  KeyBuffer key([&] {
    Bytes k(kKeySize);
    rng.fill(k);
    return k;
  }());
  rng.fill(manifest.nonce);

  Bytes sealed = aead_seal(key.view(), manifest.nonce, payload);
  std::vector<Bytes> slices = partition_payload(sealed, params.k, params.strategy, manifest.partition_seed);

  std::vector<SecretShare> shares = params.key_scheme == KeyScheme::kShamir
                                        ? split_secret_shamir(key.view(), manifest.threshold, params.k, rng)
                                        : split_secret_xor(key.view(), params.k, rng);

  for (std::size_t i = 0; i < slices.size(); ++i) manifest.slice_digests[i] = sha256(slices[i]);
  manifest.ciphertext_digest = sha256(sealed);
  manifest.plaintext_digest = sha256(payload);

  Production out;
  out.fragments = build_fragments(slices, shares, manifest);
  out.manifest = std::move(manifest);
  for (auto& s : shares) OPENSSL_cleanse(s.y.data(), s.y.size());
  return out;
}

std::vector<FragmentStatus> verify_fragments(std::span<const Fragment> fragments,
                                             const PayloadManifest& manifest,
                                             const ReceiptStore& receipts, const Ledger& ledger) {
  // Slice digests of what was actually supplied, by index (first occurrence).
  std::map<std::uint8_t, Digest> supplied;
  std::map<std::uint8_t, int> counts;
  for (const auto& f : fragments) {
    supplied.try_emplace(f.index, sha256(f.slice));
    ++counts[f.index];
  }

  std::vector<FragmentStatus> statuses;
  statuses.reserve(fragments.size());
  for (const auto& f : fragments) {
    FragmentStatus st;
    st.index = f.index;
    st.fragment_digest = sha256(serialize_fragment(f));
    st.duplicate = counts[f.index] > 1;

    if (!receipts.contains(st.fragment_digest)) {
      st.receipt = ReceiptStatus::kUnanchored;
    } else if (const AnchorReceipt* r = receipts.find(st.fragment_digest); r == nullptr) {
      st.receipt = ReceiptStatus::kUnreadable;
    } else {
      ReceiptVerdict verdict = ledger.verify_receipt(st.fragment_digest, *r);
      st.receipt = verdict ? ReceiptStatus::kValid : ReceiptStatus::kInvalid;
      st.receipt_failure = verdict.failure;
    }

    const bool in_range = f.index >= 1 && f.index <= manifest.k;
    st.header_matches = in_range && f.k == manifest.k && f.class_code == manifest.class_code;
    st.slice_matches = in_range && sha256(f.slice) == manifest.slice_digests[f.index - 1];

    auto deps = dependency_indices(manifest.class_code, f.index, manifest.k);
    if (deps.size() != f.dep_digests.size()) {
      st.dependencies = DependencyStatus::kMismatch;
    } else {
      for (std::size_t n = 0; n < deps.size(); ++n) {
        auto it = supplied.find(deps[n]);
        if (it == supplied.end()) {
          if (st.dependencies == DependencyStatus::kValid) st.dependencies = DependencyStatus::kMissing;
        } else if (it->second != f.dep_digests[n]) {
          st.dependencies = DependencyStatus::kMismatch;
        }
      }
    }
    statuses.push_back(st);
  }
  return statuses;
}

std::vector<std::uint8_t> missing_indices(std::span<const Fragment> fragments, const PayloadManifest& manifest) {
  std::vector<bool> present(manifest.k + 1, false);
  for (const auto& f : fragments) {
    if (f.index >= 1 && f.index <= manifest.k) present[f.index] = true;
  }
  std::vector<std::uint8_t> missing;
  for (unsigned i = 1; i <= manifest.k; ++i) {
    if (!present[i]) missing.push_back(static_cast<std::uint8_t>(i));
  }
  return missing;
}

std::string AssemblyReport::to_json() const {
  json frags = json::array();
  for (const auto& s : fragments) {
    json receipt_doc = std::string(to_string(s.receipt));
    if (s.receipt == ReceiptStatus::kInvalid) {
      receipt_doc = std::string(to_string(s.receipt)) + ":" + std::string(to_string(s.receipt_failure));
    }
    frags.push_back({
        {"index", s.index},
        {"fragment_digest", to_hex(s.fragment_digest)},
        {"receipt", receipt_doc},
        {"header", s.header_matches ? "valid" : "mismatch"},
        {"slice", s.slice_matches ? "valid" : "mismatch"},
        {"dependencies", to_string(s.dependencies)},
        {"duplicate", s.duplicate},
        {"valid", s.valid()},
    });
  }
  json events = json::array();
  for (const auto& e : activation) events.push_back({{"index", e.index}, {"start", e.start}, {"end", e.end}});
  json doc = {
      {"fragments", std::move(frags)},
      {"chain_valid", chain_valid},
      {"key_reconstructed", key_reconstructed},
      {"key_method", to_string(key_method)},
      {"decryption", decryption},
      {"outcome", outcome},
      {"activation", std::move(events)},
  };
  return to_canonical(doc);
}

Assembly assemble(std::span<const Fragment> fragments, const PayloadManifest& manifest,
                  const ReceiptStore& receipts, const Ledger& ledger, ReconstructionMethod method) {
  manifest.validate();
  AssemblyReport report;
  report.key_method = method;
  report.fragments = verify_fragments(fragments, manifest, receipts, ledger);
  report.chain_valid = ledger.validate_chain();

  auto refuse = [&](AssemblyErrorKind kind, std::vector<std::uint8_t> indices, const std::string& why) {
    report.outcome = std::string(to_string(kind));
    throw AssemblyError(kind, std::move(indices), report, why);
  };

  std::vector<std::uint8_t> failing = indices_of(report.fragments, true);
  if (!failing.empty()) refuse(AssemblyErrorKind::kVerificationFailed, failing, "fragment verification failed");
  if (!report.chain_valid) {
    refuse(AssemblyErrorKind::kVerificationFailed, indices_of(report.fragments, false), "ledger failed validation");
  }

  std::vector<const Fragment*> ordered;
  for (const auto& f : fragments) ordered.push_back(&f);
  std::sort(ordered.begin(), ordered.end(), [](auto* a, auto* b) { return a->index < b->index; });
  const std::vector<std::uint8_t> missing = missing_indices(fragments, manifest);

  const std::size_t needed = manifest.key_scheme == KeyScheme::kShamir ? manifest.threshold : manifest.k;
  if (ordered.size() < needed) refuse(AssemblyErrorKind::kInsufficientShares, missing, "not enough key shares");

  std::vector<SecretShare> shares;
  for (std::size_t i = 0; i < needed; ++i) shares.push_back({ordered[i]->share_x, ordered[i]->share_y});
  KeyBuffer key(manifest.key_scheme == KeyScheme::kShamir ? reconstruct(shares, method)
                                                          : reconstruct_xor(shares));
  for (auto& s : shares) OPENSSL_cleanse(s.y.data(), s.y.size());
  report.key_reconstructed = true;

  if (!missing.empty()) refuse(AssemblyErrorKind::kInsufficientSlices, missing, "ciphertext slices missing");

  std::vector<Bytes> slices;
  for (const auto* f : ordered) slices.push_back(f->slice);
  Bytes sealed = unpartition(slices, manifest.partition_strategy, manifest.partition_seed);
  std::vector<std::uint8_t> all = indices_of(report.fragments, false);
  if (sha256(sealed) != manifest.ciphertext_digest) {
    refuse(AssemblyErrorKind::kVerificationFailed, all, "reassembled ciphertext does not match manifest");
  }

  Bytes payload;
  try {
    payload = aead_open(key.view(), manifest.nonce, sealed);
  } catch (const AuthenticationError&) {
    report.decryption = "authentication-failed";
    refuse(AssemblyErrorKind::kAuthenticationFailed, all, "AEAD authentication failed");
  }
  if (sha256(payload) != manifest.plaintext_digest) {
    report.decryption = "plaintext-digest-mismatch";
    refuse(AssemblyErrorKind::kPlaintextDigestMismatch, all, "plaintext digest mismatch");
  }
  report.decryption = "ok";
  report.outcome = "ok";
  return {std::move(payload), std::move(report)};
}

}  // namespace kary
