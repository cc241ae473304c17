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

#ifndef WFM_AHE_HPP_
#define WFM_AHE_HPP_

#include <gmpxx.h>

#include <span>
#include <utility>
#include <vector>

#include "wfm/bytes.hpp"
#include "wfm/kernels.hpp"
#include "wfm/rng.hpp"

namespace wfm {

// Largest payload accepted by enc().
inline constexpr uint64_t kMaxPayload = 0xffffffffull;

// Paillier public key with generator 1 + N.
struct AhePublicKey {
  mpz_class n;
  mpz_class n2;
  Bytes key_id;  // first 8 bytes of SHA-256 over N

  unsigned bits() const { return static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2)); }
  bool operator==(const AhePublicKey& o) const { return n == o.n; }

  static AhePublicKey from_modulus(mpz_class n);
};

struct AheSecretKey {
  mpz_class phi;  // (p-1)(q-1)
  mpz_class mu;   // phi^-1 mod N
};

struct AheKeypair {
  AhePublicKey pk;
  AheSecretKey sk;
};

struct Ciphertext {
  mpz_class value;  // in Z_{N^2}
  Bytes key_id;
};

namespace ahe {

// bits must be 512 (tests) or 2048 (production).
AheKeypair gen(unsigned bits, Rng& rng);

Ciphertext enc(const AhePublicKey& pk, uint64_t m, Rng& rng);
// Plaintext in [0, N).
mpz_class dec(const AheKeypair& kp, const Ciphertext& ct);
// Homomorphic sum; throws on an empty list or mixed keys.
Ciphertext sum(const AhePublicKey& pk, std::span<const Ciphertext> cts);
// Multiplies in a fresh r^N.
Ciphertext refresh(const AhePublicKey& pk, const Ciphertext& ct, Rng& rng);
// Returns Refresh(ct + Enc(r)) and r, with r uniform in [0, N).
std::pair<Ciphertext, mpz_class> mask_share(const AhePublicKey& pk, const Ciphertext& ct, Rng& rng);

// Batch forms. Randomness is drawn serially from rng so both Exec modes
// yield identical ciphertexts.
std::vector<Ciphertext> enc_all(const AhePublicKey& pk, std::span<const uint64_t> ms, Rng& rng,
                                Exec exec);
std::vector<Ciphertext> refresh_all(const AhePublicKey& pk, std::span<const Ciphertext> cts,
                                    Rng& rng, Exec exec);
std::vector<mpz_class> dec_all(const AheKeypair& kp, std::span<const Ciphertext> cts, Exec exec);

// Wire encodings: u32 length then big-endian magnitude.
void put_ciphertext(Bytes& out, const Ciphertext& ct);
Ciphertext read_ciphertext(ByteReader& r, const AhePublicKey& pk);
void put_public_key(Bytes& out, const AhePublicKey& pk);
AhePublicKey read_public_key(ByteReader& r);

}  // namespace ahe
}  // namespace wfm

#endif  // WFM_AHE_HPP_
