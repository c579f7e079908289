#include "kary/partition.hpp"

#include "kary/error.hpp"

namespace kary {

std::vector<Bytes> partition_payload(ByteView data, std::size_t k, PartitionStrategy strategy,
                                     std::uint64_t /*seed*/) {
  if (k == 0) throw InvalidArgument("k must be at least 1");
  if (data.size() < k) throw InvalidArgument("input shorter than k");

  const std::size_t base = data.size() / k;
  const std::size_t extra = data.size() % k;
  std::vector<Bytes> slices(k);
  for (std::size_t i = 0; i < k; ++i) slices[i].reserve(base + (i < extra ? 1 : 0));

  if (strategy == PartitionStrategy::kContiguous) {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t len = base + (i < extra ? 1 : 0);
      slices[i].assign(data.begin() + static_cast<std::ptrdiff_t>(pos),
                       data.begin() + static_cast<std::ptrdiff_t>(pos + len));
      pos += len;
    }
  } else {
    for (std::size_t j = 0; j < data.size(); ++j) slices[j % k].push_back(data[j]);
  }
  return slices;
}

Bytes unpartition(std::span<const Bytes> slices, PartitionStrategy strategy,
                  std::uint64_t /*seed*/) {
  if (slices.empty()) throw InvalidArgument("no slices to join");
  std::size_t total = 0;
  for (const auto& s : slices) total += s.size();

  Bytes out;
  out.reserve(total);
  if (strategy == PartitionStrategy::kContiguous) {
    for (const auto& s : slices) out.insert(out.end(), s.begin(), s.end());
    return out;
  }

  const std::size_t k = slices.size();
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t expected = total / k + (i < total % k ? 1 : 0);
    if (slices[i].size() != expected) throw InvalidArgument("slice sizes inconsistent with striping");
  }
  for (std::size_t j = 0; j < total; ++j) out.push_back(slices[j % k][j / k]);
  return out;
}

}  // namespace kary
