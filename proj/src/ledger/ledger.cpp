#include "kary/ledger.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <set>

#include "kary/canonical_json.hpp"
#include "kary/error.hpp"
#include "kary/io.hpp"
#include "kary/merkle.hpp"

namespace kary {
namespace {

bool block_is_well_formed(const Block& b) {
  if (!meets_difficulty(block_hash(b), b.difficulty)) return false;
  if (merkle_root_of(b.tx_digests) != b.merkle_root) return false;
  std::set<Digest> unique(b.tx_digests.begin(), b.tx_digests.end());
  if (unique.size() != b.tx_digests.size()) return false;
  if (b.height == 0) {
    return b.prev_hash == kZeroDigest && b.tx_digests.empty() && b.merkle_root == kZeroDigest;
  }
  return true;
}

}  // namespace

std::string_view to_string(ReceiptFailure f) {
  switch (f) {
    case ReceiptFailure::kNone: return "ok";
    case ReceiptFailure::kDigestMismatch: return "digest-mismatch";
    case ReceiptFailure::kPathMismatch: return "merkle-path-mismatch";
    case ReceiptFailure::kUnknownBlock: return "unknown-block";
    case ReceiptFailure::kBlockHashMismatch: return "block-hash-mismatch";
    case ReceiptFailure::kMerkleRootMismatch: return "merkle-root-mismatch";
    case ReceiptFailure::kTxListMismatch: return "tx-list-mismatch";
    case ReceiptFailure::kTimestampMismatch: return "timestamp-mismatch";
    case ReceiptFailure::kProofOfWork: return "proof-of-work-invalid";
    case ReceiptFailure::kBrokenLink: return "broken-link";
  }
  return "unknown";
}

std::uint64_t mine_nonce(Block& block) {
  std::uint64_t attempts = 0;
  for (std::uint64_t nonce = 0;; ++nonce) {
    block.nonce = nonce;
    ++attempts;
    if (meets_difficulty(block_hash(block), block.difficulty)) return attempts;
    if (nonce == std::numeric_limits<std::uint64_t>::max()) {
      throw InvalidArgument("nonce space exhausted");
    }
  }
}

Ledger::Ledger(LedgerOptions options, std::uint64_t genesis_timestamp) : options_(options) {
  if (options_.difficulty > 255) throw InvalidArgument("difficulty must be in 0..255");
  Block genesis;
  genesis.timestamp = genesis_timestamp;
  genesis.difficulty = static_cast<std::uint8_t>(options_.difficulty);
  mine_nonce(genesis);
  blocks_.push_back(std::move(genesis));
}

Ledger::Ledger(std::vector<Block> blocks, LedgerOptions options)
    : options_(options), blocks_(std::move(blocks)) {}

Ledger Ledger::from_text(std::string_view text, LedgerOptions options) {
  std::vector<Block> blocks;
  while (!text.empty()) {
    auto nl = text.find('\n');
    if (nl == std::string_view::npos) throw LedgerError(LedgerErrorKind::kCorrupt, "ledger line not terminated");
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl + 1);
    try {
      blocks.push_back(block_from_json(line));
    } catch (const FormatError& e) {
      throw LedgerError(LedgerErrorKind::kCorrupt,
                        "malformed block at line " + std::to_string(blocks.size() + 1) + ": " + e.what());
    }
  }
  if (blocks.empty()) throw LedgerError(LedgerErrorKind::kCorrupt, "ledger has no genesis block");
  return Ledger(std::move(blocks), options);
}

Ledger Ledger::open(const std::filesystem::path& file, LedgerOptions options,
                    std::uint64_t genesis_timestamp) {
  if (!std::filesystem::exists(file)) {
    Ledger fresh(options, genesis_timestamp);
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    write_text_file(file, fresh.to_text());
    fresh.file_ = file;
    return fresh;
  }
  Ledger loaded = from_text(read_text_file(file), options);
  loaded.file_ = file;
  auto pending = loaded.pending_path();
  if (std::filesystem::exists(pending)) {
    try {
      json doc = parse_canonical(read_text_file(pending));
      if (!doc.is_array()) throw FormatError("pending pool must be an array");
      for (const auto& d : doc) loaded.pending_.push_back(digest_from_hex(d.get<std::string>()));
    } catch (const std::exception& e) {
      throw LedgerError(LedgerErrorKind::kCorrupt, std::string("pending pool unreadable: ") + e.what());
    }
  }
  return loaded;
}

std::filesystem::path Ledger::pending_path() const {
  auto p = *file_;
  p += ".pending";
  return p;
}

void Ledger::persist_pending_locked() const {
  if (!file_) return;
  if (pending_.empty()) {
    std::filesystem::remove(pending_path());
    return;
  }
  json doc = json::array();
  for (const auto& d : pending_) doc.push_back(to_hex(d));
  write_text_file(pending_path(), to_canonical(doc) + "\n");
}

void Ledger::submit_anchor(ByteView digest) {
  if (digest.size() != kDigestSize) {
    throw LedgerError(LedgerErrorKind::kMalformedDigest, "anchored digest must be 32 bytes");
  }
  Digest d;
  std::copy(digest.begin(), digest.end(), d.begin());
  std::unique_lock lock(*mutex_);
  if (std::find(pending_.begin(), pending_.end(), d) != pending_.end()) {
    throw LedgerError(LedgerErrorKind::kDuplicatePending, "digest " + to_hex(d) + " is already pending");
  }
  pending_.push_back(d);
  persist_pending_locked();
}

MineResult Ledger::mine_block(std::uint64_t now) {
  std::unique_lock lock(*mutex_);
  if (pending_.empty() && !options_.allow_empty_blocks) {
    throw LedgerError(LedgerErrorKind::kEmptyBlock, "no pending anchors to mine");
  }
  const Block& tip = blocks_.back();
  if (tip.height == std::numeric_limits<std::uint32_t>::max()) {
    throw LedgerError(LedgerErrorKind::kCorrupt, "block height exhausted");
  }

  MineResult result;
  Block& block = result.block;
  block.height = tip.height + 1;
  block.prev_hash = block_hash(tip);
  block.tx_digests = pending_;
  block.merkle_root = merkle_root_of(block.tx_digests);
  block.timestamp = now;
  block.difficulty = static_cast<std::uint8_t>(options_.difficulty);
  result.attempts = mine_nonce(block);

  const Digest hash = block_hash(block);
  for (std::size_t i = 0; i < block.tx_digests.size(); ++i) {
    AnchorReceipt r;
    r.target_digest = block.tx_digests[i];
    r.block_height = block.height;
    r.block_hash = hash;
    r.merkle_root = block.merkle_root;
    r.merkle_path = merkle_path_of(block.tx_digests, i);
    r.anchor_timestamp = block.timestamp;
    result.receipts.push_back(std::move(r));
  }

  if (file_) append_text_file(*file_, block_to_json(block) + "\n");
  blocks_.push_back(block);
  pending_.clear();
  persist_pending_locked();
  return result;
}

ReceiptVerdict Ledger::verify_receipt(const Digest& digest, const AnchorReceipt& receipt) const {
  auto fail = [](ReceiptFailure f) { return ReceiptVerdict{f}; };
  if (receipt.target_digest != digest) return fail(ReceiptFailure::kDigestMismatch);
  if (replay_merkle_path(digest, receipt.merkle_path) != receipt.merkle_root) {
    return fail(ReceiptFailure::kPathMismatch);
  }

  std::shared_lock lock(*mutex_);
  if (receipt.block_height >= blocks_.size()) return fail(ReceiptFailure::kUnknownBlock);
  const Block& block = blocks_[receipt.block_height];
  if (block.height != receipt.block_height) return fail(ReceiptFailure::kUnknownBlock);
  const Digest hash = block_hash(block);
  if (hash != receipt.block_hash) return fail(ReceiptFailure::kBlockHashMismatch);
  if (block.merkle_root != receipt.merkle_root) return fail(ReceiptFailure::kMerkleRootMismatch);
  if (merkle_root_of(block.tx_digests) != block.merkle_root) return fail(ReceiptFailure::kTxListMismatch);
  if (block.timestamp != receipt.anchor_timestamp) return fail(ReceiptFailure::kTimestampMismatch);
  if (!meets_difficulty(hash, block.difficulty)) return fail(ReceiptFailure::kProofOfWork);
  if (block.height > 0 && block.prev_hash != block_hash(blocks_[block.height - 1])) {
    return fail(ReceiptFailure::kBrokenLink);
  }
  return {};
}

bool Ledger::validate_chain() const {
  std::shared_lock lock(*mutex_);
  if (blocks_.empty()) return false;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const Block& b = blocks_[i];
    if (b.height != i) return false;
    if (!block_is_well_formed(b)) return false;
    if (i > 0 && b.prev_hash != block_hash(blocks_[i - 1])) return false;
  }
  return true;
}

std::vector<Block> Ledger::blocks() const {
  std::shared_lock lock(*mutex_);
  return blocks_;
}

std::vector<Digest> Ledger::pending() const {
  std::shared_lock lock(*mutex_);
  return pending_;
}

std::size_t Ledger::size() const {
  std::shared_lock lock(*mutex_);
  return blocks_.size();
}

std::string Ledger::to_text() const {
  std::shared_lock lock(*mutex_);
  std::string out;
  for (const auto& b : blocks_) out += block_to_json(b) + "\n";
  return out;
}

}  // namespace kary
