#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kary/bytes.hpp"
#include "kary/fragment.hpp"
#include "kary/ledger.hpp"
#include "kary/manifest.hpp"
#include "kary/random.hpp"
#include "kary/receipt.hpp"
#include "kary/secret_sharing.hpp"

namespace kary {

struct ProduceParams {
  unsigned k = 4;
  unsigned threshold = 0;  // 0 means k
  ClassCode class_code = ClassCode::kIB;
  KeyScheme key_scheme = KeyScheme::kShamir;
  PartitionStrategy strategy = PartitionStrategy::kContiguous;
};

struct Production {
  PayloadManifest manifest;
  std::vector<Bytes> fragments;  // serialized, fragment i+1 at position i
};

/// Encrypts `payload` under a fresh key and nonce, partitions ciphertext||tag
/// into k slices, shares the key per the scheme and emits the fragments plus
/// manifest. The key itself is wiped before returning.
Production produce(ByteView payload, const ProduceParams& params, RandomSource& rng);

enum class ReceiptStatus { kValid, kUnanchored, kUnreadable, kInvalid };
enum class DependencyStatus { kValid, kMismatch, kMissing };

std::string_view to_string(ReceiptStatus s);
std::string_view to_string(DependencyStatus s);

struct FragmentStatus {
  std::uint8_t index = 0;
  Digest fragment_digest{};  // SHA-256 of the serialized fragment (the anchored value)
  ReceiptStatus receipt = ReceiptStatus::kUnanchored;
  ReceiptFailure receipt_failure = ReceiptFailure::kNone;
  bool header_matches = false;  // k, class and index agree with the manifest
  bool slice_matches = false;
  DependencyStatus dependencies = DependencyStatus::kValid;
  bool duplicate = false;

  bool valid() const {
    return receipt == ReceiptStatus::kValid && header_matches && slice_matches &&
           dependencies == DependencyStatus::kValid && !duplicate;
  }

  friend bool operator==(const FragmentStatus&, const FragmentStatus&) = default;
};

/// Checks each fragment independently: its anchor receipt against the ledger,
/// its slice digest against the manifest, and its embedded dependency digests
/// against the referenced fragments actually supplied.
std::vector<FragmentStatus> verify_fragments(std::span<const Fragment> fragments,
                                             const PayloadManifest& manifest,
                                             const ReceiptStore& receipts, const Ledger& ledger);

struct ActivationEvent {
  std::uint8_t index = 0;
  std::uint64_t start = 0;
  std::uint64_t end = 0;

  friend bool operator==(const ActivationEvent&, const ActivationEvent&) = default;
};

struct AssemblyReport {
  std::vector<FragmentStatus> fragments;
  bool chain_valid = false;
  bool key_reconstructed = false;
  ReconstructionMethod key_method = ReconstructionMethod::kNeville;
  std::string decryption = "not-attempted";
  std::string outcome = "ok";
  std::vector<ActivationEvent> activation;

  bool succeeded() const { return outcome == "ok"; }
  std::string to_json() const;
};

enum class AssemblyErrorKind {
  kVerificationFailed,
  kInsufficientShares,
  kInsufficientSlices,
  kAuthenticationFailed,
  kPlaintextDigestMismatch,
};

std::string_view to_string(AssemblyErrorKind k);

class AssemblyError : public std::runtime_error {
 public:
  AssemblyError(AssemblyErrorKind kind, std::vector<std::uint8_t> indices, AssemblyReport report,
                const std::string& what)
      : std::runtime_error(what), kind_(kind), indices_(std::move(indices)), report_(std::move(report)) {}

  AssemblyErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::uint8_t>& indices() const noexcept { return indices_; }
  const AssemblyReport& report() const noexcept { return report_; }

 private:
  AssemblyErrorKind kind_;
  std::vector<std::uint8_t> indices_;
  AssemblyReport report_;
};

struct Assembly {
  Bytes payload;
  AssemblyReport report;
};

/// Verification gate, then key reconstruction, reordering, decryption and the
/// plaintext digest check. Throws AssemblyError at the first failing stage.
Assembly assemble(std::span<const Fragment> fragments, const PayloadManifest& manifest,
                  const ReceiptStore& receipts, const Ledger& ledger,
                  ReconstructionMethod method = ReconstructionMethod::kNeville);

/// Indices 1..k not represented among `fragments`.
std::vector<std::uint8_t> missing_indices(std::span<const Fragment> fragments, const PayloadManifest& manifest);

}  // namespace kary
