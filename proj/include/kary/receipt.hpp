#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kary/bytes.hpp"
#include "kary/merkle.hpp"

namespace kary {

/// Proof that `target_digest` was included in the block at `block_height`.
struct AnchorReceipt {
  Digest target_digest{};
  std::uint32_t block_height = 0;
  Digest block_hash{};
  Digest merkle_root{};
  std::vector<PathStep> merkle_path;
  std::uint64_t anchor_timestamp = 0;

  std::string to_json() const;
  /// Strict canonical parse. Throws FormatError.
  static AnchorReceipt from_json(std::string_view text);

  friend bool operator==(const AnchorReceipt&, const AnchorReceipt&) = default;
};

/// `<hex digest>.receipt.json`
std::string receipt_filename(const Digest& digest);

/// Receipts held in memory, keyed by anchored digest. A receipt that failed to
/// parse is kept as an entry with no value so callers can tell "unanchored"
/// from "corrupt".
class ReceiptStore {
 public:
  void put(const AnchorReceipt& r) { entries_[r.target_digest] = r; }
  void put_corrupt(const Digest& d) { entries_[d] = std::nullopt; }

  bool contains(const Digest& d) const { return entries_.contains(d); }
  /// nullptr when absent or corrupt.
  const AnchorReceipt* find(const Digest& d) const;

  /// Loads `<dir>/<hex>.receipt.json` for each digest that has a file.
  static ReceiptStore load(const std::filesystem::path& dir, const std::vector<Digest>& digests);
  /// Writes one file per receipt; returns the paths written.
  static std::vector<std::filesystem::path> save(const std::filesystem::path& dir,
                                                 const std::vector<AnchorReceipt>& receipts);

 private:
  std::map<Digest, std::optional<AnchorReceipt>> entries_;
};

}  // namespace kary
