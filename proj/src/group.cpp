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

#include "wfm/group.hpp"

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/err.h>
#include <openssl/obj_mac.h>

#include "wfm/bigint.hpp"
#include "wfm/errors.hpp"

namespace wfm {

std::string to_string(TagWidth w) { return w == TagWidth::kFull ? "full" : "96"; }

TagWidth parse_tag_width(std::string_view s) {
  if (s == "full") return TagWidth::kFull;
  if (s == "96") return TagWidth::k96;
  throw ConfigError("tag width must be 'full' or '96'");
}

namespace {

constexpr unsigned kMaxHashCounter = 1u << 16;

Bytes hash_candidate(ByteSpan input, unsigned counter) {
  Bytes buf(input.begin(), input.end());
  put_u16(buf, static_cast<uint16_t>(counter));
  return sha256(buf);
}

struct BnCtxDeleter {
  void operator()(BN_CTX* c) const { BN_CTX_free(c); }
};
struct BnDeleter {
  void operator()(BIGNUM* b) const { BN_clear_free(b); }
};
using BnPtr = std::unique_ptr<BIGNUM, BnDeleter>;

BN_CTX* thread_bn_ctx() {
  thread_local std::unique_ptr<BN_CTX, BnCtxDeleter> ctx(BN_CTX_new());
  return ctx.get();
}

class EcPoint {
 public:
  explicit EcPoint(const EC_GROUP* g) : p_(EC_POINT_new(g)) {
    if (p_ == nullptr) throw CryptoError("EC_POINT_new failed");
  }
  ~EcPoint() { EC_POINT_free(p_); }
  EcPoint(const EcPoint&) = delete;
  EcPoint& operator=(const EcPoint&) = delete;
  EC_POINT* get() const { return p_; }

 private:
  EC_POINT* p_;
};

class P256Group final : public Group {
 public:
  P256Group() : Group(make_params()), group_(EC_GROUP_new_by_curve_name(NID_X9_62_prime256v1)) {
    if (group_ == nullptr) throw CryptoError("prime256v1 unavailable");
  }
  ~P256Group() override { EC_GROUP_free(group_); }

  size_t element_size() const override { return 33; }

  GroupElement hash_to_group(ByteSpan input) const override {
    EcPoint p(group_);
    for (unsigned ctr = 0; ctr < kMaxHashCounter; ++ctr) {
      Bytes cand{0x02};
      put_bytes(cand, hash_candidate(input, ctr));
      if (EC_POINT_oct2point(group_, p.get(), cand.data(), cand.size(), thread_bn_ctx()) == 1) {
        return GroupElement(encode(p.get(), POINT_CONVERSION_UNCOMPRESSED));
      }
      ERR_clear_error();
    }
    throw CryptoError("hash_to_group exhausted its counter");
  }

  GroupElement exp(const GroupElement& h, const Scalar& a) const override {
    EcPoint in(group_);
    decode(h.repr(), in.get());
    BnPtr k(to_bn(a.value()));
    EcPoint out(group_);
    if (EC_POINT_mul(group_, out.get(), nullptr, in.get(), k.get(), thread_bn_ctx()) != 1) {
      throw CryptoError("EC_POINT_mul failed");
    }
    return GroupElement(encode(out.get(), POINT_CONVERSION_UNCOMPRESSED));
  }

  Bytes serialize(const GroupElement& h) const override {
    EcPoint p(group_);
    decode(h.repr(), p.get());
    return encode(p.get(), POINT_CONVERSION_COMPRESSED);
  }

  GroupElement deserialize(ByteSpan bytes) const override {
    if (bytes.size() != element_size() || (bytes[0] != 0x02 && bytes[0] != 0x03)) {
      throw ProtocolError("malformed P-256 element encoding");
    }
    EcPoint p(group_);
    if (EC_POINT_oct2point(group_, p.get(), bytes.data(), bytes.size(), thread_bn_ctx()) != 1) {
      ERR_clear_error();
      throw ProtocolError("bytes do not decode to a P-256 point");
    }
    return GroupElement(encode(p.get(), POINT_CONVERSION_UNCOMPRESSED));
  }

 private:
  static GroupParams make_params() {
    mpz_class q("ffffffff00000000ffffffffffffffffbce6faada7179e84f3b9cac2fc632551", 16);
    return GroupParams{GroupId::kP256, "P-256", q, 128};
  }

  static BIGNUM* to_bn(const mpz_class& v) {
    Bytes b = mpz_to_bytes(v, 32);
    BIGNUM* bn = BN_bin2bn(b.data(), static_cast<int>(b.size()), nullptr);
    if (bn == nullptr) throw CryptoError("BN_bin2bn failed");
    return bn;
  }

  void decode(const Bytes& repr, EC_POINT* out) const {
    if (EC_POINT_oct2point(group_, out, repr.data(), repr.size(), thread_bn_ctx()) != 1) {
      ERR_clear_error();
      throw CryptoError("invalid internal point encoding");
    }
  }

  Bytes encode(const EC_POINT* p, point_conversion_form_t form) const {
    Bytes out(form == POINT_CONVERSION_COMPRESSED ? 33 : 65);
    size_t n = EC_POINT_point2oct(group_, p, form, out.data(), out.size(), thread_bn_ctx());
    if (n != out.size()) throw CryptoError("EC_POINT_point2oct failed");
    return out;
  }

  EC_GROUP* group_;
};

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod(uint64_t base, mpz_class e, uint64_t m) {
  uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return result;
}

Bytes u64_bytes(uint64_t v) {
  Bytes b;
  put_u32(b, static_cast<uint32_t>(v >> 32));
  put_u32(b, static_cast<uint32_t>(v));
  return b;
}

class TestModPGroup final : public Group {
 public:
  TestModPGroup(uint64_t p, uint64_t q)
      : Group(GroupParams{GroupId::kTestModP, "test-mod-p", mpz_class(std::to_string(q)), 0}),
        p_(p) {
    mpz_class pz(std::to_string(p));
    if (p >= (uint64_t{1} << 63) || q < 2 || (p - 1) % q != 0 ||
        mpz_probab_prime_p(order().get_mpz_t(), 30) == 0 ||
        mpz_probab_prime_p(pz.get_mpz_t(), 30) == 0) {
      throw ConfigError("test group requires primes p < 2^63 and q | p-1");
    }
  }

  size_t element_size() const override { return 8; }

  GroupElement hash_to_group(ByteSpan input) const override {
    for (unsigned ctr = 0; ctr < kMaxHashCounter; ++ctr) {
      Bytes d = hash_candidate(input, ctr);
      mpz_class r = mpz_from_bytes(d) % mpz_class(std::to_string(p_));
      uint64_t v = r.get_ui();
      if (v != 0 && in_subgroup(v)) return test_group_element(v);
    }
    throw CryptoError("hash_to_group exhausted its counter");
  }

  GroupElement exp(const GroupElement& h, const Scalar& a) const override {
    return test_group_element(powmod(test_group_value(h), a.value(), p_));
  }

  Bytes serialize(const GroupElement& h) const override { return h.repr(); }

  GroupElement deserialize(ByteSpan bytes) const override {
    if (bytes.size() != 8) throw ProtocolError("malformed test-group element encoding");
    GroupElement h(Bytes(bytes.begin(), bytes.end()));
    uint64_t v = test_group_value(h);
    if (v == 0 || v >= p_ || !in_subgroup(v)) {
      throw ProtocolError("bytes are not an element of the test subgroup");
    }
    return h;
  }

 private:
  bool in_subgroup(uint64_t v) const { return powmod(v, order(), p_) == 1; }

  uint64_t p_;
};

}  // namespace

uint64_t test_group_value(const GroupElement& h) {
  const Bytes& r = h.repr();
  if (r.size() != 8) throw CryptoError("not a test-group element");
  uint64_t v = 0;
  for (uint8_t b : r) v = v << 8 | b;
  return v;
}

GroupElement test_group_element(uint64_t v) { return GroupElement(u64_bytes(v)); }

Scalar Group::random_scalar(Rng& rng) const {
  size_t bits = mpz_sizeinbase(order().get_mpz_t(), 2);
  size_t nbytes = (bits + 7) / 8;
  mpz_class mask = (mpz_class(1) << bits) - 1;
  for (;;) {
    mpz_class v = mpz_from_bytes(rng.bytes(nbytes)) & mask;
    if (v >= 1 && v < order()) return Scalar(v);
  }
}

Scalar Group::make_scalar(const mpz_class& v) const {
  if (v < 1 || v >= order()) throw CryptoError("scalar outside [1, q)");
  return Scalar(v);
}

Scalar Group::inverse(const Scalar& a) const {
  mpz_class inv;
  if (a.value() == 0 || mpz_invert(inv.get_mpz_t(), a.value().get_mpz_t(), order().get_mpz_t()) == 0) {
    throw CryptoError("scalar is not invertible");
  }
  return Scalar(inv);
}

Scalar Group::mul(const Scalar& a, const Scalar& b) const {
  return Scalar(mpz_class(a.value() * b.value() % order()));
}

Scalar Group::div(const Scalar& a, const Scalar& b) const { return mul(a, inverse(b)); }

size_t Group::tag_size(TagWidth width) const {
  return width == TagWidth::kFull ? element_size() : kTruncatedTagBytes;
}

TagBytes Group::to_tag(const GroupElement& h, TagWidth width) const {
  Bytes s = serialize(h);
  if (width == TagWidth::kFull) return TagBytes{std::string(s.begin(), s.end())};
  std::string out(kTruncatedTagBytes, '\0');
  size_t n = std::min(s.size(), kTruncatedTagBytes);
  std::copy(s.end() - static_cast<std::ptrdiff_t>(n), s.end(), out.end() - static_cast<std::ptrdiff_t>(n));
  return TagBytes{out};
}

GroupPtr make_p256() {
  static GroupPtr instance = std::make_shared<P256Group>();
  return instance;
}

GroupPtr make_test_group(uint64_t p, uint64_t q) {
  return std::make_shared<TestModPGroup>(p, q);
}

GroupPtr make_default_test_group() {
  static GroupPtr instance = [] {
    mpz_class q = mpz_class(1) << 60;
    for (;;) {
      mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
      mpz_class p = 2 * q + 1;
      if (mpz_probab_prime_p(p.get_mpz_t(), 30) != 0) {
        return make_test_group(p.get_ui(), q.get_ui());
      }
    }
  }();
  return instance;
}

}  // namespace wfm
