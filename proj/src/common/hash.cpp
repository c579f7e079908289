#include "kary/hash.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace kary {

Digest sha256(ByteView data) {
  Digest out;
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != kDigestSize) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  return out;
}

Digest sha256_pair(const Digest& a, const Digest& b) {
  std::array<std::uint8_t, 2 * kDigestSize> buf;
  std::copy(a.begin(), a.end(), buf.begin());
  std::copy(b.begin(), b.end(), buf.begin() + kDigestSize);
  return sha256(ByteView(buf));
}

Digest sha256d(ByteView data) {
  Digest first = sha256(data);
  return sha256(ByteView(first));
}

}  // namespace kary
