#include <doctest.h>

#include "demo_instance.hpp"
#include "kary/error.hpp"
#include "kary/partition.hpp"
#include "oracles.hpp"

using namespace kary;
using kary::testing::random_bytes;

TEST_CASE("contiguous split of 8 bytes into 4") {
  Bytes in{0, 1, 2, 3, 4, 5, 6, 7};
  auto slices = partition_payload(in, 4, PartitionStrategy::kContiguous, 0);
  REQUIRE(slices.size() == 4);
  CHECK(slices[0] == Bytes{0, 1});
  CHECK(slices[1] == Bytes{2, 3});
  CHECK(slices[2] == Bytes{4, 5});
  CHECK(slices[3] == Bytes{6, 7});
}

TEST_CASE("k = 1 is the identity") {
  Bytes in = random_bytes(37, 1);
  for (auto s : {PartitionStrategy::kContiguous, PartitionStrategy::kInterleave}) {
    auto slices = partition_payload(in, 1, s, 0);
    REQUIRE(slices.size() == 1);
    CHECK(slices[0] == in);
    CHECK(unpartition(slices, s, 0) == in);
  }
}

TEST_CASE("interleave of 6 bytes into 2") {
  Bytes in{10, 11, 12, 13, 14, 15};
  auto slices = partition_payload(in, 2, PartitionStrategy::kInterleave, 0);
  CHECK(slices[0] == Bytes{10, 12, 14});
  CHECK(slices[1] == Bytes{11, 13, 15});
  CHECK(kary::testing::deinterleave(slices) == in);
}

TEST_CASE("unpartition examples") {
  std::vector<Bytes> slices{{0, 1}, {2, 3}};
  CHECK(unpartition(slices, PartitionStrategy::kContiguous, 0) == Bytes{0, 1, 2, 3});
  CHECK_THROWS_AS(unpartition(std::vector<Bytes>{}, PartitionStrategy::kContiguous, 0), InvalidArgument);
  std::vector<Bytes> ragged{{0}, {1, 2, 3}};
  CHECK_THROWS_AS(unpartition(ragged, PartitionStrategy::kInterleave, 0), InvalidArgument);
}

TEST_CASE("partition rejects bad k") {
  Bytes in{1, 2, 3};
  CHECK_THROWS_AS(partition_payload(in, 0, PartitionStrategy::kContiguous, 0), InvalidArgument);
  CHECK_THROWS_AS(partition_payload(in, 4, PartitionStrategy::kInterleave, 0), InvalidArgument);
}

TEST_CASE("round trip property, sizes balanced") {
  SeededRandom rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t k = 1 + rng.next_byte() % 16;
    std::size_t len = k + (static_cast<std::size_t>(rng.next_byte()) << 2) + rng.next_byte() % 7;
    Bytes in(len);
    rng.fill(in);
    for (auto s : {PartitionStrategy::kContiguous, PartitionStrategy::kInterleave}) {
      auto slices = partition_payload(in, k, s, 0);
      REQUIRE(slices.size() == k);
      auto [lo, hi] = std::minmax_element(slices.begin(), slices.end(),
                                          [](const Bytes& a, const Bytes& b) { return a.size() < b.size(); });
      CHECK(hi->size() - lo->size() <= 1);
      REQUIRE(unpartition(slices, s, 0) == in);
    }
  }
}

TEST_CASE("round trip on large payloads") {
  for (std::size_t len : {std::size_t{1} << 20, std::size_t{65537}}) {
    Bytes in = random_bytes(len, len);
    for (std::size_t k : {1u, 7u, 16u}) {
      for (auto s : {PartitionStrategy::kContiguous, PartitionStrategy::kInterleave}) {
        CHECK(unpartition(partition_payload(in, k, s, 0), s, 0) == in);
      }
    }
  }
}
