#include "kary/workspace.hpp"

#include <chrono>
#include <cstdlib>
#include <string>

#include "kary/canonical_json.hpp"
#include "kary/error.hpp"
#include "kary/io.hpp"

namespace kary::cli {

void WorkspaceConfig::validate() const {
  if (difficulty > kMaxDifficulty) throw InvalidArgument("difficulty must be in 0..32");
  auto norm = [](const std::filesystem::path& p) { return std::filesystem::absolute(p).lexically_normal(); };
  if (norm(ledger_file) == norm(receipt_dir) || norm(ledger_file) == norm(fragment_dir) ||
      norm(receipt_dir) == norm(fragment_dir)) {
    throw InvalidArgument("ledger, receipt and fragment locations must be distinct");
  }
}

WorkspaceConfig resolve_workspace(const std::filesystem::path& root, const WorkspaceOverrides& overrides) {
  WorkspaceConfig cfg;
  cfg.root = root;
  cfg.ledger_file = root / "ledger.jsonl";
  cfg.receipt_dir = root / "receipts";
  cfg.fragment_dir = root / "fragments";
  cfg.defaults_file = root / "kary.defaults.json";

  if (std::filesystem::exists(cfg.defaults_file)) {
    json doc;
    try {
      doc = json::parse(read_text_file(cfg.defaults_file));
    } catch (const json::exception& e) {
      throw InvalidArgument("cannot parse " + cfg.defaults_file.string() + ": " + e.what());
    }
    if (!doc.is_object()) throw InvalidArgument("defaults file must hold a JSON object");
    try {
      if (doc.contains("ledger")) cfg.ledger_file = root / doc["ledger"].get<std::string>();
      if (doc.contains("receipts")) cfg.receipt_dir = root / doc["receipts"].get<std::string>();
      if (doc.contains("fragments")) cfg.fragment_dir = root / doc["fragments"].get<std::string>();
      if (doc.contains("difficulty")) cfg.difficulty = doc["difficulty"].get<unsigned>();
      if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    } catch (const json::exception& e) {
      throw InvalidArgument("bad value in defaults file: " + std::string(e.what()));
    }
  }
  if (overrides.difficulty) cfg.difficulty = *overrides.difficulty;
  if (overrides.seed) cfg.seed = overrides.seed;
  cfg.validate();
  return cfg;
}

std::uint64_t current_timestamp() {
  if (const char* env = std::getenv("KARY_TIMESTAMP"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      std::string text(env);
      std::uint64_t v = std::stoull(text, &used);
      if (used != text.size() || text.front() == '-') throw InvalidArgument("");
      return v;
    } catch (const std::exception&) {
      throw InvalidArgument("KARY_TIMESTAMP must be unix seconds");
    }
  }
  auto now = std::chrono::system_clock::now().time_since_epoch();
  return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::seconds>(now).count());
}

}  // namespace kary::cli
