#include "kary/receipt.hpp"

#include <limits>

#include "kary/canonical_json.hpp"
#include "kary/error.hpp"
#include "kary/io.hpp"

namespace kary {

std::string AnchorReceipt::to_json() const {
  json path = json::array();
  for (const auto& step : merkle_path) {
    path.push_back({{"sibling", to_hex(step.sibling)}, {"side", to_string(step.side)}});
  }
  json doc = {
      {"target_digest", to_hex(target_digest)},
      {"block_height", block_height},
      {"block_hash", to_hex(block_hash)},
      {"merkle_root", to_hex(merkle_root)},
      {"merkle_path", std::move(path)},
      {"anchor_timestamp", anchor_timestamp},
  };
  return to_canonical(doc);
}

AnchorReceipt AnchorReceipt::from_json(std::string_view text) {
  json doc = parse_canonical(text);
  require_exact_keys(doc, {"target_digest", "block_height", "block_hash", "merkle_root",
                           "merkle_path", "anchor_timestamp"});
  AnchorReceipt r;
  r.target_digest = digest_from_hex(require_string(doc, "target_digest"));
  std::uint64_t height = require_uint(doc, "block_height");
  if (height > std::numeric_limits<std::uint32_t>::max()) throw FormatError("block height out of range");
  r.block_height = static_cast<std::uint32_t>(height);
  r.block_hash = digest_from_hex(require_string(doc, "block_hash"));
  r.merkle_root = digest_from_hex(require_string(doc, "merkle_root"));
  const json& path = require_field(doc, "merkle_path");
  if (!path.is_array()) throw FormatError("merkle_path must be an array");
  for (const auto& step : path) {
    require_exact_keys(step, {"sibling", "side"});
    r.merkle_path.push_back({digest_from_hex(require_string(step, "sibling")),
                             side_from_string(require_string(step, "side"))});
  }
  r.anchor_timestamp = require_uint(doc, "anchor_timestamp");
  return r;
}

std::string receipt_filename(const Digest& digest) { return to_hex(digest) + ".receipt.json"; }

const AnchorReceipt* ReceiptStore::find(const Digest& d) const {
  auto it = entries_.find(d);
  if (it == entries_.end() || !it->second) return nullptr;
  return &*it->second;
}

ReceiptStore ReceiptStore::load(const std::filesystem::path& dir, const std::vector<Digest>& digests) {
  ReceiptStore store;
  for (const auto& d : digests) {
    auto path = dir / receipt_filename(d);
    if (!std::filesystem::exists(path)) continue;
    try {
      AnchorReceipt r = AnchorReceipt::from_json(read_text_file(path));
      if (r.target_digest == d) {
        store.put(r);
      } else {
        store.put_corrupt(d);
      }
    } catch (const FormatError&) {
      store.put_corrupt(d);
    }
  }
  return store;
}

std::vector<std::filesystem::path> ReceiptStore::save(const std::filesystem::path& dir,
                                                      const std::vector<AnchorReceipt>& receipts) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const auto& r : receipts) {
    auto path = dir / receipt_filename(r.target_digest);
    write_text_file(path, r.to_json() + "\n");
    written.push_back(path);
  }
  return written;
}

}  // namespace kary
