#include <doctest.h>

#include "demo_instance.hpp"
#include "kary/error.hpp"
#include "kary/hash.hpp"
#include "kary/merkle.hpp"

using namespace kary;

namespace {

std::vector<Digest> leaves(std::size_t n, std::uint64_t seed) {
  std::vector<Digest> out(n);
  SeededRandom rng(seed);
  for (auto& d : out) rng.fill(d);
  return out;
}

}  // namespace

TEST_CASE("merkle root examples") {
  CHECK(merkle_root_of({}) == kZeroDigest);
  Digest d1 = sha256(to_bytes("a"));
  Digest d2 = sha256(to_bytes("b"));
  Digest d3 = sha256(to_bytes("c"));
  std::vector<Digest> one{d1};
  CHECK(merkle_root_of(one) == d1);
  // Values computed independently with Python's hashlib.
  std::vector<Digest> two{d1, d2};
  CHECK(to_hex(merkle_root_of(two)) == "e5a01fee14e0ed5c48714f22180f25ad8365b53f9779f79dc4a3d7e93963f94a");
  std::vector<Digest> three{d1, d2, d3};
  CHECK(to_hex(merkle_root_of(three)) == "7075152d03a5cd92104887b476862778ec0c87be5c2fa1c0a90f87c49fad6eff");
}

TEST_CASE("merkle path examples") {
  auto ls = leaves(2, 1);
  std::vector<Digest> single{ls[0]};
  CHECK(merkle_path_of(single, 0).empty());
  auto path = merkle_path_of(ls, 0);
  REQUIRE(path.size() == 1);
  CHECK(path[0] == PathStep{ls[1], Side::kRight});
  CHECK(merkle_path_of(ls, 1) == std::vector<PathStep>{{ls[0], Side::kLeft}});
  CHECK_THROWS_AS(merkle_path_of(ls, 2), InvalidArgument);
  // Promoted node: leaf 2 of 3 has a single step at the top level.
  auto three = leaves(3, 2);
  auto p2 = merkle_path_of(three, 2);
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].side == Side::kLeft);
  CHECK(p2[0].sibling == sha256_pair(three[0], three[1]));
}

TEST_CASE("every path verifies and every mutation fails, 1..64 leaves") {
  for (std::size_t n = 1; n <= 64; ++n) {
    auto ls = leaves(n, n);
    Digest root = merkle_root_of(ls);
    for (std::size_t i = 0; i < n; ++i) {
      auto path = merkle_path_of(ls, i);
      REQUIRE(replay_merkle_path(ls[i], path) == root);
      for (std::size_t s = 0; s < path.size(); ++s) {
        auto flipped = path;
        flipped[s].side = flipped[s].side == Side::kLeft ? Side::kRight : Side::kLeft;
        CHECK(replay_merkle_path(ls[i], flipped) != root);
        auto corrupted = path;
        corrupted[s].sibling[s % kDigestSize] ^= 0x01;
        CHECK(replay_merkle_path(ls[i], corrupted) != root);
      }
    }
  }
}
