#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "kary/bytes.hpp"

namespace kary {

/// Which side of the running hash the sibling sits on.
enum class Side : std::uint8_t { kLeft, kRight };

std::string_view to_string(Side s);
Side side_from_string(std::string_view s);

struct PathStep {
  Digest sibling{};
  Side side = Side::kRight;

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

/// Leaves are paired left to right with parent = SHA-256(left || right). An
/// odd trailing node is promoted unchanged. Empty input gives 32 zero bytes.
Digest merkle_root_of(std::span<const Digest> leaves);

/// Inclusion path for leaves[index]. Promotion levels contribute no step.
/// Throws InvalidArgument when index is out of range.
std::vector<PathStep> merkle_path_of(std::span<const Digest> leaves, std::size_t index);

Digest replay_merkle_path(const Digest& leaf, std::span<const PathStep> path);

}  // namespace kary
