#include "kary/aead.hpp"

#include <openssl/evp.h>

#include <memory>

#include "kary/error.hpp"

namespace kary {
namespace {

using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)>;

CipherCtx init(ByteView key, const Nonce& nonce, bool encrypt) {
  if (key.size() != kKeySize) throw InvalidArgument("ChaCha20-Poly1305 key must be 32 bytes");
  CipherCtx ctx(EVP_CIPHER_CTX_new(), &EVP_CIPHER_CTX_free);
  if (!ctx) throw std::runtime_error("EVP_CIPHER_CTX_new failed");
  if (EVP_CipherInit_ex(ctx.get(), EVP_chacha20_poly1305(), nullptr, nullptr, nullptr, encrypt ? 1 : 0) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_AEAD_SET_IVLEN, static_cast<int>(kNonceSize), nullptr) != 1 ||
      EVP_CipherInit_ex(ctx.get(), nullptr, nullptr, key.data(), nonce.data(), -1) != 1) {
    throw std::runtime_error("ChaCha20-Poly1305 initialisation failed");
  }
  return ctx;
}

void feed_aad(EVP_CIPHER_CTX* ctx, ByteView aad) {
  if (aad.empty()) return;
  int len = 0;
  if (EVP_CipherUpdate(ctx, nullptr, &len, aad.data(), static_cast<int>(aad.size())) != 1) {
    throw std::runtime_error("AEAD associated data rejected");
  }
}

}  // namespace

Bytes aead_seal(ByteView key, const Nonce& nonce, ByteView plaintext, ByteView associated_data) {
  auto ctx = init(key, nonce, true);
  feed_aad(ctx.get(), associated_data);
  Bytes out(plaintext.size() + kTagSize);
  int len = 0;
  if (!plaintext.empty() &&
      EVP_CipherUpdate(ctx.get(), out.data(), &len, plaintext.data(), static_cast<int>(plaintext.size())) != 1) {
    throw std::runtime_error("encryption failed");
  }
  int final_len = 0;
  if (EVP_CipherFinal_ex(ctx.get(), out.data() + len, &final_len) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_AEAD_GET_TAG, static_cast<int>(kTagSize),
                          out.data() + plaintext.size()) != 1) {
    throw std::runtime_error("encryption finalisation failed");
  }
  return out;
}

Bytes aead_open(ByteView key, const Nonce& nonce, ByteView sealed, ByteView associated_data) {
  if (sealed.size() < kTagSize) throw AuthenticationError("sealed data shorter than the tag");
  auto ctx = init(key, nonce, false);
  feed_aad(ctx.get(), associated_data);
  const std::size_t body = sealed.size() - kTagSize;
  Bytes out(body);
  int len = 0;
  if (body > 0 &&
      EVP_CipherUpdate(ctx.get(), out.data(), &len, sealed.data(), static_cast<int>(body)) != 1) {
    throw AuthenticationError("decryption failed");
  }
  Bytes tag(sealed.begin() + static_cast<std::ptrdiff_t>(body), sealed.end());
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_AEAD_SET_TAG, static_cast<int>(kTagSize), tag.data()) != 1) {
    throw AuthenticationError("tag rejected");
  }
  int final_len = 0;
  if (EVP_CipherFinal_ex(ctx.get(), out.data() + len, &final_len) != 1) {
    throw AuthenticationError("authentication tag mismatch");
  }
  return out;
}

}  // namespace kary
