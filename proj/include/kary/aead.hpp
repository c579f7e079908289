#pragma once

#include <stdexcept>

#include "kary/bytes.hpp"
#include "kary/manifest.hpp"

namespace kary {

inline constexpr std::size_t kTagSize = 16;

/// ChaCha20-Poly1305 (RFC 8439). Returns ciphertext || tag.
Bytes aead_seal(ByteView key, const Nonce& nonce, ByteView plaintext, ByteView associated_data = {});

class AuthenticationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws AuthenticationError if the tag does not verify.
Bytes aead_open(ByteView key, const Nonce& nonce, ByteView sealed, ByteView associated_data = {});

}  // namespace kary
