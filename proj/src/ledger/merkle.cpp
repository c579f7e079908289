#include "kary/merkle.hpp"

#include "kary/error.hpp"
#include "kary/hash.hpp"

namespace kary {
namespace {

std::vector<Digest> next_level(const std::vector<Digest>& level) {
  std::vector<Digest> parents;
  parents.reserve((level.size() + 1) / 2);
  for (std::size_t i = 0; i + 1 < level.size(); i += 2) parents.push_back(sha256_pair(level[i], level[i + 1]));
  if (level.size() % 2 == 1) parents.push_back(level.back());
  return parents;
}

}  // namespace

std::string_view to_string(Side s) { return s == Side::kLeft ? "LEFT" : "RIGHT"; }

Side side_from_string(std::string_view s) {
  if (s == "LEFT") return Side::kLeft;
  if (s == "RIGHT") return Side::kRight;
  throw FormatError("unknown merkle path side '" + std::string(s) + "'");
}

Digest merkle_root_of(std::span<const Digest> leaves) {
  if (leaves.empty()) return kZeroDigest;
  std::vector<Digest> level(leaves.begin(), leaves.end());
  while (level.size() > 1) level = next_level(level);
  return level.front();
}

std::vector<PathStep> merkle_path_of(std::span<const Digest> leaves, std::size_t index) {
  if (index >= leaves.size()) throw InvalidArgument("merkle leaf index out of range");
  std::vector<PathStep> path;
  std::vector<Digest> level(leaves.begin(), leaves.end());
  while (level.size() > 1) {
    if (index % 2 == 1) {
      path.push_back({level[index - 1], Side::kLeft});
    } else if (index + 1 < level.size()) {
      path.push_back({level[index + 1], Side::kRight});
    }
    level = next_level(level);
    index /= 2;
  }
  return path;
}

Digest replay_merkle_path(const Digest& leaf, std::span<const PathStep> path) {
  Digest acc = leaf;
  for (const auto& step : path) {
    acc = step.side == Side::kLeft ? sha256_pair(step.sibling, acc) : sha256_pair(acc, step.sibling);
  }
  return acc;
}

}  // namespace kary
