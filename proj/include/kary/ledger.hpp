#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kary/block.hpp"
#include "kary/bytes.hpp"
#include "kary/receipt.hpp"

namespace kary {

struct LedgerOptions {
  unsigned difficulty = 8;
  bool allow_empty_blocks = false;
};

enum class LedgerErrorKind { kDuplicatePending, kMalformedDigest, kEmptyBlock, kCorrupt };

class LedgerError : public std::runtime_error {
 public:
  LedgerError(LedgerErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  LedgerErrorKind kind() const noexcept { return kind_; }

 private:
  LedgerErrorKind kind_;
};

enum class ReceiptFailure {
  kNone,
  kDigestMismatch,      // receipt is for another digest
  kPathMismatch,        // path replay does not reach the receipt's root
  kUnknownBlock,        // no block at the receipt's height
  kBlockHashMismatch,
  kMerkleRootMismatch,  // receipt root differs from the stored block's root
  kTxListMismatch,      // stored block's root differs from its own transactions
  kTimestampMismatch,
  kProofOfWork,
  kBrokenLink,          // stored block does not link to its predecessor
};

std::string_view to_string(ReceiptFailure f);

struct ReceiptVerdict {
  ReceiptFailure failure = ReceiptFailure::kNone;
  explicit operator bool() const noexcept { return failure == ReceiptFailure::kNone; }
};

struct MineResult {
  Block block;
  std::vector<AnchorReceipt> receipts;
  std::uint64_t attempts = 0;  // hashes evaluated to find the nonce
};

/// Finds the smallest nonce (counting up from 0) meeting `block.difficulty`
/// and stores it in `block`. Returns the number of attempts.
std::uint64_t mine_nonce(Block& block);

/// Simulated proof-of-existence chain. Single logical writer: submissions,
/// mining and persistence are serialized; verification runs under a shared
/// lock against a consistent snapshot.
///
/// When bound to a file, every mined block is appended as one canonical JSON
/// line, and the pending pool is mirrored to `<file>.pending`.
class Ledger {
 public:
  /// In-memory chain holding only a freshly mined genesis block.
  Ledger(LedgerOptions options, std::uint64_t genesis_timestamp);

  /// Parses one canonical JSON block per line. Structural problems throw
  /// LedgerError(kCorrupt); semantic ones are left for validate_chain().
  static Ledger from_text(std::string_view text, LedgerOptions options = {});

  /// Loads `file` (and its pending pool) or creates it with a genesis block.
  static Ledger open(const std::filesystem::path& file, LedgerOptions options,
                     std::uint64_t genesis_timestamp);

  Ledger(Ledger&&) noexcept = default;
  Ledger& operator=(Ledger&&) noexcept = default;

  /// Throws LedgerError(kMalformedDigest) for non-32-byte input and
  /// LedgerError(kDuplicatePending) if the digest is already pending.
  void submit_anchor(ByteView digest);
  void submit_anchor(const Digest& digest) { submit_anchor(ByteView(digest)); }

  /// Drains the pending pool into a new block. Throws LedgerError(kEmptyBlock)
  /// on an empty pool unless empty blocks are allowed.
  MineResult mine_block(std::uint64_t now);

  ReceiptVerdict verify_receipt(const Digest& digest, const AnchorReceipt& receipt) const;

  /// Heights consecutive from 0, genesis well-formed, Merkle roots and PoW
  /// hold, and every block links to its predecessor.
  bool validate_chain() const;

  std::vector<Block> blocks() const;
  std::vector<Digest> pending() const;
  std::size_t size() const;
  const LedgerOptions& options() const noexcept { return options_; }

  /// The persisted form: one canonical JSON block per line.
  std::string to_text() const;

 private:
  Ledger(std::vector<Block> blocks, LedgerOptions options);

  void persist_pending_locked() const;
  std::filesystem::path pending_path() const;

  std::unique_ptr<std::shared_mutex> mutex_ = std::make_unique<std::shared_mutex>();
  LedgerOptions options_;
  std::vector<Block> blocks_;
  std::vector<Digest> pending_;
  std::optional<std::filesystem::path> file_;
};

}  // namespace kary
