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

#include "wfm/ahe.hpp"

#include "wfm/bigint.hpp"
#include "wfm/errors.hpp"

namespace wfm {

AhePublicKey AhePublicKey::from_modulus(mpz_class n) {
  if (n < 3 || mpz_even_p(n.get_mpz_t())) throw CryptoError("invalid Paillier modulus");
  AhePublicKey pk;
  pk.n2 = n * n;
  Bytes digest = sha256(mpz_to_bytes(n));
  pk.key_id.assign(digest.begin(), digest.begin() + 8);
  pk.n = std::move(n);
  return pk;
}

namespace ahe {

namespace {

mpz_class random_prime(unsigned bits, Rng& rng) {
  for (;;) {
    mpz_class v = mpz_from_bytes(rng.bytes((bits + 7) / 8));
    v &= (mpz_class(1) << bits) - 1;
    // top two bits set so that the product has exactly 2*bits bits
    v |= mpz_class(3) << (bits - 2);
    v |= 1;
    mpz_class p;
    mpz_nextprime(p.get_mpz_t(), v.get_mpz_t());
    if (mpz_sizeinbase(p.get_mpz_t(), 2) == bits) return p;
  }
}

mpz_class random_unit(const AhePublicKey& pk, Rng& rng) {
  for (;;) {
    mpz_class r = random_below(pk.n, rng);
    if (r == 0) continue;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), pk.n.get_mpz_t());
    if (g == 1) return r;
  }
}

mpz_class pow_n(const AhePublicKey& pk, const mpz_class& r) {
  mpz_class out;
  mpz_powm(out.get_mpz_t(), r.get_mpz_t(), pk.n.get_mpz_t(), pk.n2.get_mpz_t());
  return out;
}

void check_key(const AhePublicKey& pk, const Ciphertext& ct) {
  if (ct.key_id != pk.key_id) throw CryptoError("ciphertext belongs to a different public key");
}

Ciphertext enc_with(const AhePublicKey& pk, uint64_t m, const mpz_class& r) {
  if (m > kMaxPayload) throw CryptoError("payload exceeds 32 bits");
  mpz_class gm = (1 + mpz_class(static_cast<unsigned long>(m)) * pk.n) % pk.n2;
  return Ciphertext{(gm * pow_n(pk, r)) % pk.n2, pk.key_id};
}

}  // namespace

AheKeypair gen(unsigned bits, Rng& rng) {
  if (bits != 512 && bits != 2048) throw ConfigError("AHE key size must be 512 or 2048 bits");
  for (;;) {
    mpz_class p = random_prime(bits / 2, rng);
    mpz_class q = random_prime(bits / 2, rng);
    if (p == q) continue;
    mpz_class n = p * q;
    mpz_class phi = (p - 1) * (q - 1);
    mpz_class mu;
    if (mpz_invert(mu.get_mpz_t(), phi.get_mpz_t(), n.get_mpz_t()) == 0) continue;
    AheKeypair kp;
    kp.pk = AhePublicKey::from_modulus(n);
    kp.sk = AheSecretKey{phi, mu};
    return kp;
  }
}

Ciphertext enc(const AhePublicKey& pk, uint64_t m, Rng& rng) {
  if (m > kMaxPayload) throw CryptoError("payload exceeds 32 bits");
  return enc_with(pk, m, random_unit(pk, rng));
}

mpz_class dec(const AheKeypair& kp, const Ciphertext& ct) {
  const AhePublicKey& pk = kp.pk;
  check_key(pk, ct);
  if (ct.value <= 0 || ct.value >= pk.n2) throw CryptoError("ciphertext outside Z_{N^2}");
  mpz_class u;
  mpz_powm(u.get_mpz_t(), ct.value.get_mpz_t(), kp.sk.phi.get_mpz_t(), pk.n2.get_mpz_t());
  mpz_class l = (u - 1) / pk.n;
  return (l * kp.sk.mu) % pk.n;
}

Ciphertext sum(const AhePublicKey& pk, std::span<const Ciphertext> cts) {
  if (cts.empty()) throw CryptoError("sum over an empty ciphertext list");
  mpz_class acc = 1;
  for (const auto& ct : cts) {
    check_key(pk, ct);
    acc = (acc * ct.value) % pk.n2;
  }
  return Ciphertext{acc, pk.key_id};
}

Ciphertext refresh(const AhePublicKey& pk, const Ciphertext& ct, Rng& rng) {
  check_key(pk, ct);
  return Ciphertext{(ct.value * pow_n(pk, random_unit(pk, rng))) % pk.n2, pk.key_id};
}

std::pair<Ciphertext, mpz_class> mask_share(const AhePublicKey& pk, const Ciphertext& ct,
                                            Rng& rng) {
  check_key(pk, ct);
  mpz_class r = random_below(pk.n, rng);
  // Enc(r) needs no randomness of its own: the refresh supplies it.
  mpz_class shifted = (ct.value * ((1 + r * pk.n) % pk.n2)) % pk.n2;
  return {refresh(pk, Ciphertext{shifted, pk.key_id}, rng), r};
}

std::vector<Ciphertext> enc_all(const AhePublicKey& pk, std::span<const uint64_t> ms, Rng& rng,
                                Exec exec) {
  std::vector<mpz_class> rs(ms.size());
  for (auto& r : rs) r = random_unit(pk, rng);
  std::vector<Ciphertext> out(ms.size());
  kernels::for_each_index(ms.size(), exec, [&](size_t i) { out[i] = enc_with(pk, ms[i], rs[i]); });
  return out;
}

std::vector<Ciphertext> refresh_all(const AhePublicKey& pk, std::span<const Ciphertext> cts,
                                    Rng& rng, Exec exec) {
  for (const auto& ct : cts) check_key(pk, ct);
  std::vector<mpz_class> rs(cts.size());
  for (auto& r : rs) r = random_unit(pk, rng);
  std::vector<Ciphertext> out(cts.size());
  kernels::for_each_index(cts.size(), exec, [&](size_t i) {
    out[i] = Ciphertext{(cts[i].value * pow_n(pk, rs[i])) % pk.n2, pk.key_id};
  });
  return out;
}

std::vector<mpz_class> dec_all(const AheKeypair& kp, std::span<const Ciphertext> cts, Exec exec) {
  std::vector<mpz_class> out(cts.size());
  kernels::for_each_index(cts.size(), exec, [&](size_t i) { out[i] = dec(kp, cts[i]); });
  return out;
}

void put_ciphertext(Bytes& out, const Ciphertext& ct) { put_blob32(out, mpz_to_bytes(ct.value)); }

Ciphertext read_ciphertext(ByteReader& r, const AhePublicKey& pk) {
  ByteSpan b = r.blob32();
  mpz_class v = mpz_from_bytes(b);
  if (v <= 0 || v >= pk.n2) throw ProtocolError("ciphertext outside Z_{N^2}");
  return Ciphertext{std::move(v), pk.key_id};
}

void put_public_key(Bytes& out, const AhePublicKey& pk) { put_blob32(out, mpz_to_bytes(pk.n)); }

AhePublicKey read_public_key(ByteReader& r) {
  mpz_class n = mpz_from_bytes(r.blob32());
  unsigned bits = static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
  if (bits != 512 && bits != 2048) throw ProtocolError("peer public key has an unsupported size");
  try {
    return AhePublicKey::from_modulus(std::move(n));
  } catch (const CryptoError& e) {
    throw ProtocolError(std::string("peer public key rejected: ") + e.what());
  }
}

}  // namespace ahe
}  // namespace wfm
