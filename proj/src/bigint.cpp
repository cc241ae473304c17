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

#include "wfm/bigint.hpp"

#include "wfm/errors.hpp"

namespace wfm {

mpz_class mpz_from_bytes(ByteSpan b) {
  mpz_class v;
  if (!b.empty()) mpz_import(v.get_mpz_t(), b.size(), 1, 1, 1, 0, b.data());
  return v;
}

Bytes mpz_to_bytes(const mpz_class& v, size_t width) {
  if (v < 0) throw CryptoError("negative integer has no unsigned encoding");
  Bytes out(width, 0);
  size_t count = 0;
  size_t need = v == 0 ? 0 : (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
  if (need > width) throw CryptoError("integer wider than target encoding");
  if (need > 0) mpz_export(out.data() + (width - need), &count, 1, 1, 1, 0, v.get_mpz_t());
  return out;
}

Bytes mpz_to_bytes(const mpz_class& v) {
  size_t need = v == 0 ? 0 : (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
  return mpz_to_bytes(v, need);
}

mpz_class random_below(const mpz_class& bound, Rng& rng) {
  if (bound <= 0) throw CryptoError("random_below needs a positive bound");
  size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  size_t nbytes = (bits + 7) / 8;
  mpz_class mask = (mpz_class(1) << bits) - 1;
  for (;;) {
    mpz_class v = mpz_from_bytes(rng.bytes(nbytes)) & mask;
    if (v < bound) return v;
  }
}

}  // namespace wfm
