#pragma once

#include "kary/bytes.hpp"

namespace kary {

Digest sha256(ByteView data);
inline Digest sha256(const Bytes& data) { return sha256(ByteView(data)); }

/// SHA-256 over the concatenation a || b.
Digest sha256_pair(const Digest& a, const Digest& b);

/// SHA-256(SHA-256(data)).
Digest sha256d(ByteView data);

}  // namespace kary
