#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

namespace kary::cli {

/// Where a workspace keeps its state. Values come from built-in defaults, then
/// `<root>/kary.defaults.json` when present, then command-line flags.
struct WorkspaceConfig {
  std::filesystem::path root = ".";
  std::filesystem::path ledger_file;
  std::filesystem::path receipt_dir;
  std::filesystem::path fragment_dir;
  std::filesystem::path defaults_file;
  unsigned difficulty = 8;
  std::optional<std::uint64_t> seed;

  static constexpr unsigned kMaxDifficulty = 32;

  /// Throws InvalidArgument if paths collide or difficulty exceeds the cap.
  void validate() const;
};

struct WorkspaceOverrides {
  std::optional<unsigned> difficulty;
  std::optional<std::uint64_t> seed;
};

/// Throws InvalidArgument on a malformed defaults file.
WorkspaceConfig resolve_workspace(const std::filesystem::path& root, const WorkspaceOverrides& overrides);

/// KARY_TIMESTAMP (unix seconds) if set, else the wall clock.
/// Throws InvalidArgument when the variable is not a number.
std::uint64_t current_timestamp();

}  // namespace kary::cli
