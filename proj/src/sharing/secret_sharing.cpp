#include "kary/secret_sharing.hpp"

#include <array>

#include "kary/error.hpp"
#include "kary/gf256.hpp"

namespace kary {
namespace {

void check_shares(std::span<const SecretShare> shares) {
  if (shares.empty()) throw InvalidArgument("at least one share required");
  std::array<bool, 256> seen{};
  const std::size_t len = shares.front().y.size();
  for (const auto& s : shares) {
    if (s.x == 0) throw InvalidArgument("share abscissa 0 is reserved for the secret");
    if (seen[s.x]) throw InvalidArgument("duplicate share abscissa");
    seen[s.x] = true;
    if (s.y.size() != len) throw InvalidArgument("share ordinates differ in length");
  }
}

}  // namespace

std::string_view to_string(ReconstructionMethod m) {
  return m == ReconstructionMethod::kNeville ? "NEVILLE" : "LAGRANGE";
}

std::vector<SecretShare> split_secret_xor(ByteView secret, unsigned k, RandomSource& rng) {
  if (k == 0) throw InvalidArgument("k must be at least 1");
  if (k > 255) throw InvalidArgument("k must be at most 255");
  std::vector<SecretShare> shares(k);
  Bytes last(secret.begin(), secret.end());
  for (unsigned i = 0; i + 1 < k; ++i) {
    shares[i].x = static_cast<std::uint8_t>(i + 1);
    shares[i].y.resize(secret.size());
    rng.fill(shares[i].y);
    for (std::size_t j = 0; j < last.size(); ++j) last[j] ^= shares[i].y[j];
  }
  shares[k - 1].x = static_cast<std::uint8_t>(k);
  shares[k - 1].y = std::move(last);
  return shares;
}

Bytes reconstruct_xor(std::span<const SecretShare> shares) {
  check_shares(shares);
  Bytes out(shares.front().y.size(), 0);
  for (const auto& s : shares) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] ^= s.y[j];
  }
  return out;
}

std::vector<SecretShare> split_secret_shamir(ByteView secret, unsigned t, unsigned n,
                                             RandomSource& rng) {
  if (t == 0 || t > n || n > 255) throw InvalidArgument("require 1 <= t <= n <= 255");

  std::vector<SecretShare> shares(n);
  for (unsigned i = 0; i < n; ++i) {
    shares[i].x = static_cast<std::uint8_t>(i + 1);
    shares[i].y.resize(secret.size());
  }

  Bytes coeffs(t);
  for (std::size_t j = 0; j < secret.size(); ++j) {
    coeffs[0] = secret[j];
    rng.fill(std::span(coeffs).subspan(1));
    for (auto& share : shares) {
      // Horner evaluation at share.x.
      std::uint8_t acc = 0;
      for (std::size_t c = t; c-- > 0;) acc = gf256::add(gf256::mul(acc, share.x), coeffs[c]);
      share.y[j] = acc;
    }
  }
  return shares;
}

Bytes reconstruct_lagrange(std::span<const SecretShare> shares) {
  check_shares(shares);
  // Basis weights at x = 0: l_i(0) = prod_{m != i} x_m / (x_m - x_i).
  std::vector<std::uint8_t> weights(shares.size());
  for (std::size_t i = 0; i < shares.size(); ++i) {
    std::uint8_t num = 1;
    std::uint8_t den = 1;
    for (std::size_t m = 0; m < shares.size(); ++m) {
      if (m == i) continue;
      num = gf256::mul(num, shares[m].x);
      den = gf256::mul(den, gf256::add(shares[m].x, shares[i].x));
    }
    weights[i] = gf256::div(num, den);
  }

  Bytes out(shares.front().y.size(), 0);
  for (std::size_t j = 0; j < out.size(); ++j) {
    std::uint8_t acc = 0;
    for (std::size_t i = 0; i < shares.size(); ++i) {
      acc = gf256::add(acc, gf256::mul(weights[i], shares[i].y[j]));
    }
    out[j] = acc;
  }
  return out;
}

Bytes reconstruct_neville(std::span<const SecretShare> shares) {
  check_shares(shares);
  const std::size_t n = shares.size();
  Bytes out(shares.front().y.size(), 0);
  std::vector<std::uint8_t> p(n);
  for (std::size_t j = 0; j < out.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) p[i] = shares[i].y[j];
    // After pass `span`, p[i] holds P_{i,i+span}(0):
    //   ((0 - x_{i+span}) P_{i,i+span-1} + (x_i - 0) P_{i+1,i+span}) / (x_i - x_{i+span})
    for (std::size_t span = 1; span < n; ++span) {
      for (std::size_t i = 0; i + span < n; ++i) {
        const std::uint8_t xi = shares[i].x;
        const std::uint8_t xk = shares[i + span].x;
        const std::uint8_t num = gf256::add(gf256::mul(xk, p[i]), gf256::mul(xi, p[i + 1]));
        p[i] = gf256::div(num, gf256::add(xi, xk));
      }
    }
    out[j] = p[0];
  }
  return out;
}

Bytes reconstruct(std::span<const SecretShare> shares, ReconstructionMethod method) {
  return method == ReconstructionMethod::kNeville ? reconstruct_neville(shares)
                                                  : reconstruct_lagrange(shares);
}

}  // namespace kary
