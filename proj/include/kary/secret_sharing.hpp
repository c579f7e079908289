#pragma once

#include <span>
#include <vector>

#include "kary/bytes.hpp"
#include "kary/random.hpp"
#include "kary/secret_share.hpp"

namespace kary {

enum class ReconstructionMethod { kLagrange, kNeville };

std::string_view to_string(ReconstructionMethod m);

/// Additive split: XOR of all k ordinates equals the secret. Every share is
/// needed. Share i has x = i.
std::vector<SecretShare> split_secret_xor(ByteView secret, unsigned k, RandomSource& rng);

/// XOR of all share ordinates.
Bytes reconstruct_xor(std::span<const SecretShare> shares);

/// (t, n) Shamir sharing over GF(2^8), one independent polynomial per secret
/// byte. Share i has x = i.
std::vector<SecretShare> split_secret_shamir(ByteView secret, unsigned t, unsigned n,
                                             RandomSource& rng);

/// Interpolates through every given share and evaluates at x = 0.
/// Throws InvalidArgument on empty input, duplicate or zero x, or ragged y.
Bytes reconstruct_lagrange(std::span<const SecretShare> shares);

/// Same contract as reconstruct_lagrange, computed with the Neville/Aitken
/// recurrence.
Bytes reconstruct_neville(std::span<const SecretShare> shares);

Bytes reconstruct(std::span<const SecretShare> shares, ReconstructionMethod method);

}  // namespace kary
