/*
 * Copyright 2026 The wfm Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "wfm/rng.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <cstring>

#include "wfm/errors.hpp"

namespace wfm {

struct Rng::Impl {
  EVP_CIPHER_CTX* ctx = nullptr;
  ~Impl() { EVP_CIPHER_CTX_free(ctx); }
};

Rng::Rng(ByteSpan key) : impl_(std::make_unique<Impl>()) {
  Bytes k = sha256(key);
  uint8_t iv[16] = {0};
  impl_->ctx = EVP_CIPHER_CTX_new();
  if (impl_->ctx == nullptr ||
      EVP_EncryptInit_ex(impl_->ctx, EVP_chacha20(), nullptr, k.data(), iv) != 1) {
    throw CryptoError("chacha20 init failed");
  }
}

Rng::Rng(Rng&&) noexcept = default;
Rng& Rng::operator=(Rng&&) noexcept = default;
Rng::~Rng() = default;

Rng Rng::from_seed(ByteSpan seed) { return Rng(seed); }

Rng Rng::from_seed(uint64_t seed) {
  Bytes s;
  put_u32(s, static_cast<uint32_t>(seed >> 32));
  put_u32(s, static_cast<uint32_t>(seed));
  return Rng(s);
}

Rng Rng::system() {
  uint8_t key[32];
  if (RAND_bytes(key, sizeof key) != 1) throw CryptoError("RAND_bytes failed");
  return Rng(ByteSpan(key, sizeof key));
}

void Rng::refill() {
  static const uint8_t kZeros[4096] = {0};
  int len = 0;
  if (EVP_EncryptUpdate(impl_->ctx, buffer_.data(), &len, kZeros, sizeof kZeros) != 1 ||
      len != static_cast<int>(buffer_.size())) {
    throw CryptoError("chacha20 keystream failed");
  }
  pos_ = 0;
}

void Rng::fill(std::span<uint8_t> out) {
  size_t done = 0;
  while (done < out.size()) {
    if (pos_ == buffer_.size()) refill();
    size_t n = std::min(out.size() - done, buffer_.size() - pos_);
    std::memcpy(out.data() + done, buffer_.data() + pos_, n);
    pos_ += n;
    done += n;
  }
}

Bytes Rng::bytes(size_t n) {
  Bytes out(n);
  fill(out);
  return out;
}

uint64_t Rng::next_u64() {
  uint8_t b[8];
  fill(b);
  uint64_t v = 0;
  for (uint8_t x : b) v = v << 8 | x;
  return v;
}

uint64_t Rng::uniform_below(uint64_t bound) {
  if (bound == 0) throw ConfigError("uniform_below(0)");
  // Rejection sampling on the top multiple of bound.
  uint64_t limit = max() - max() % bound;
  for (;;) {
    uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

Rng Rng::fork(std::string_view label) {
  Bytes key = bytes(32);
  put_bytes(key, as_bytes(label));
  return Rng(key);
}

}  // namespace wfm
