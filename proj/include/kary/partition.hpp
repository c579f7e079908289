#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kary/bytes.hpp"
#include "kary/manifest.hpp"

namespace kary {

/// Splits `data` into k slices whose sizes differ by at most one byte.
/// CONTIGUOUS: consecutive runs, larger slices first.
/// INTERLEAVE: byte j goes to slice j mod k, in original order.
/// `seed` is reserved and ignored by both strategies.
std::vector<Bytes> partition_payload(ByteView data, std::size_t k, PartitionStrategy strategy,
                                     std::uint64_t seed);

/// Inverse of partition_payload.
Bytes unpartition(std::span<const Bytes> slices, PartitionStrategy strategy, std::uint64_t seed);

}  // namespace kary
