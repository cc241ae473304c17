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

#ifndef WFM_BIGINT_HPP_
#define WFM_BIGINT_HPP_

#include <gmpxx.h>

#include "wfm/bytes.hpp"
#include "wfm/rng.hpp"

namespace wfm {

// Big-endian unsigned conversions.
mpz_class mpz_from_bytes(ByteSpan b);
// Left-pads to width; throws CryptoError if v does not fit.
Bytes mpz_to_bytes(const mpz_class& v, size_t width);
Bytes mpz_to_bytes(const mpz_class& v);

// Uniform in [0, bound) by rejection sampling.
mpz_class random_below(const mpz_class& bound, Rng& rng);

}  // namespace wfm

#endif  // WFM_BIGINT_HPP_
