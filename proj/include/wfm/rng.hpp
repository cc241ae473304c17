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

#ifndef WFM_RNG_HPP_
#define WFM_RNG_HPP_

#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <string_view>

#include "wfm/bytes.hpp"

namespace wfm {

// ChaCha20 keystream generator. Seeded instances are fully reproducible;
// Rng::system() draws its key from the OS CSPRNG. Satisfies
// UniformRandomBitGenerator so it plugs into <random> and std::shuffle.
class Rng {
 public:
  using result_type = uint64_t;

  static Rng from_seed(ByteSpan seed);
  static Rng from_seed(uint64_t seed);
  static Rng system();

  Rng(Rng&&) noexcept;
  Rng& operator=(Rng&&) noexcept;
  ~Rng();

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<uint64_t>::max(); }
  result_type operator()() { return next_u64(); }

  void fill(std::span<uint8_t> out);
  Bytes bytes(size_t n);
  uint64_t next_u64();
  // Uniform in [0, bound); bound must be nonzero.
  uint64_t uniform_below(uint64_t bound);
  double uniform01();

  // Independent child stream keyed by (this stream's next key, label).
  Rng fork(std::string_view label);

 private:
  explicit Rng(ByteSpan key);
  void refill();

  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::array<uint8_t, 4096> buffer_{};
  size_t pos_ = 4096;
};

}  // namespace wfm

#endif  // WFM_RNG_HPP_
