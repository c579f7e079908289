#include <doctest.h>

#include <algorithm>
#include <array>

#include "demo_instance.hpp"
#include "kary/error.hpp"
#include "kary/secret_sharing.hpp"
#include "oracles.hpp"

using namespace kary;
using kary::testing::random_bytes;

namespace {

// Every t-subset of {0..n-1}, as index lists.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t t) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(t), true);
  do {
    std::vector<std::size_t> pick;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask[i]) pick.push_back(i);
    }
    out.push_back(pick);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

}  // namespace

TEST_CASE("xor split") {
  SeededRandom rng(5);
  Bytes secret = random_bytes(32, 5);
  auto one = split_secret_xor(secret, 1, rng);
  REQUIRE(one.size() == 1);
  CHECK(one[0].y == secret);
  CHECK(one[0].x == 1);
  CHECK_THROWS_AS(split_secret_xor(secret, 0, rng), InvalidArgument);

  for (int trial = 0; trial < 1000; ++trial) {
    unsigned k = 1 + rng.next_byte() % 8;
    Bytes s(32);
    rng.fill(s);
    auto shares = split_secret_xor(s, k, rng);
    REQUIRE(reconstruct_xor(shares) == s);
    if (k > 1) {
      std::size_t drop = rng.next_byte() % k;
      std::vector<SecretShare> rest;
      for (std::size_t i = 0; i < k; ++i) {
        if (i != drop) rest.push_back(shares[i]);
      }
      CHECK(reconstruct_xor(rest) != s);
    }
  }
}

TEST_CASE("shamir parameter checks") {
  SeededRandom rng(1);
  Bytes s = random_bytes(32, 1);
  CHECK_THROWS_AS(split_secret_shamir(s, 0, 3, rng), InvalidArgument);
  CHECK_THROWS_AS(split_secret_shamir(s, 4, 3, rng), InvalidArgument);
  CHECK_THROWS_AS(split_secret_shamir(s, 2, 256, rng), InvalidArgument);
  auto shares = split_secret_shamir(s, 1, 4, rng);
  for (const auto& sh : shares) CHECK(sh.y == s);
  auto single = split_secret_shamir(s, 1, 1, rng);
  CHECK(single.size() == 1);
  CHECK(single[0].y == s);
}

TEST_CASE("shares are evaluations of a degree t-1 polynomial with p(0) = secret") {
  // Recover the sampled coefficients by replaying the same generator.
  const unsigned t = 3, n = 5;
  Bytes secret = random_bytes(4, 11);
  SeededRandom rng(77), replay(77);
  auto shares = split_secret_shamir(secret, t, n, rng);
  for (std::size_t j = 0; j < secret.size(); ++j) {
    std::vector<std::uint8_t> coeffs{secret[j], 0, 0};
    replay.fill(std::span(coeffs).subspan(1));
    for (const auto& sh : shares) CHECK(sh.y[j] == kary::testing::peasant_poly_eval(coeffs, sh.x));
  }
}

TEST_CASE("lagrange inverts a known polynomial") {
  // p(x) = 0xAB + 0x1F x
  std::vector<std::uint8_t> coeffs{0xAB, 0x1F};
  std::vector<SecretShare> shares{{1, {kary::testing::peasant_poly_eval(coeffs, 1)}},
                                  {2, {kary::testing::peasant_poly_eval(coeffs, 2)}}};
  CHECK(reconstruct_lagrange(shares) == Bytes{0xAB});
  CHECK(reconstruct_neville(shares) == Bytes{0xAB});
}

TEST_CASE("reconstruction input validation") {
  std::vector<SecretShare> none;
  CHECK_THROWS_AS(reconstruct_lagrange(none), InvalidArgument);
  CHECK_THROWS_AS(reconstruct_neville(none), InvalidArgument);
  std::vector<SecretShare> dup{{1, {1}}, {1, {2}}};
  CHECK_THROWS_AS(reconstruct_lagrange(dup), InvalidArgument);
  CHECK_THROWS_AS(reconstruct_neville(dup), InvalidArgument);
  std::vector<SecretShare> ragged{{1, {1}}, {2, {2, 3}}};
  CHECK_THROWS_AS(reconstruct_lagrange(ragged), InvalidArgument);
  CHECK_THROWS_AS(reconstruct_neville(ragged), InvalidArgument);
  std::vector<SecretShare> zero{{0, {1}}};
  CHECK_THROWS_AS(reconstruct_neville(zero), InvalidArgument);
}

TEST_CASE("every t-subset reconstructs, both methods, t,n <= 8") {
  SeededRandom rng(2718);
  for (unsigned n = 1; n <= 8; ++n) {
    for (unsigned t = 1; t <= n; ++t) {
      for (int trial = 0; trial < 10; ++trial) {
        Bytes secret(32);
        rng.fill(secret);
        auto shares = split_secret_shamir(secret, t, n, rng);
        for (const auto& pick : subsets(n, t)) {
          std::vector<SecretShare> subset;
          for (auto i : pick) subset.push_back(shares[i]);
          REQUIRE(reconstruct_lagrange(subset) == secret);
          REQUIRE(reconstruct_neville(subset) == secret);
        }
      }
    }
  }
}

TEST_CASE("neville agrees with lagrange and ignores order") {
  SeededRandom rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    unsigned n = 1 + rng.next_byte() % 12;
    unsigned t = 1 + rng.next_byte() % n;
    Bytes secret(1 + rng.next_byte() % 40);
    rng.fill(secret);
    auto shares = split_secret_shamir(secret, t, n, rng);
    // Any number of shares >= 1 is a valid interpolation input.
    std::size_t m = 1 + rng.next_byte() % n;
    std::vector<SecretShare> subset(shares.begin(), shares.begin() + static_cast<std::ptrdiff_t>(m));
    Bytes lag = reconstruct_lagrange(subset);
    REQUIRE(reconstruct_neville(subset) == lag);
    std::reverse(subset.begin(), subset.end());
    CHECK(reconstruct_neville(subset) == lag);
  }
}

TEST_CASE("fewer than t shares do not reveal the secret") {
  SeededRandom rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    unsigned n = 2 + rng.next_byte() % 7;
    unsigned t = 2 + rng.next_byte() % (n - 1);
    Bytes secret(32);
    rng.fill(secret);
    auto shares = split_secret_shamir(secret, t, n, rng);
    std::vector<SecretShare> few(shares.begin(), shares.begin() + (t - 1));
    CHECK(reconstruct_lagrange(few) != secret);
    CHECK(reconstruct_neville(few) != secret);
  }
}

TEST_CASE("single share of a (2,3) sharing is consistent with every secret") {
  // For share abscissa x and every observed value y, enumerate all 65536
  // polynomials s + a*x and collect which secrets s can produce y.
  for (std::uint8_t x = 1; x <= 3; ++x) {
    std::array<std::array<bool, 256>, 256> consistent{};
    for (unsigned s = 0; s < 256; ++s) {
      for (unsigned a = 0; a < 256; ++a) {
        std::vector<std::uint8_t> coeffs{static_cast<std::uint8_t>(s), static_cast<std::uint8_t>(a)};
        consistent[kary::testing::peasant_poly_eval(coeffs, x)][s] = true;
      }
    }
    for (unsigned y = 0; y < 256; ++y) {
      CHECK(std::all_of(consistent[y].begin(), consistent[y].end(), [](bool b) { return b; }));
    }
  }
}
