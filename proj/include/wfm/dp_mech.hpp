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

#ifndef WFM_DP_MECH_HPP_
#define WFM_DP_MECH_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "wfm/bytes.hpp"
#include "wfm/rng.hpp"
#include "wfm/table.hpp"

namespace wfm {

enum class Party : uint8_t { kA, kB };
std::string to_string(Party p);

// Shared synthetic id sets, derived from a public seed. Column l (0-based)
// owns a noise set of 2*tau ids and a filler set of 2*tau*m ids. Party A
// draws fillers from the first tau*m filler entries, party B from the last.
struct DummyUniverse {
  size_t m = 0;
  size_t tau = 0;
  std::vector<std::vector<std::string>> noise;
  std::vector<std::vector<std::string>> filler;

  static DummyUniverse generate(ByteSpan seed, size_t m, size_t tau);

  // Throws ConfigError if any real id of t appears in the universe.
  void check_disjoint(const IdTable& t) const;
};

enum class Provenance : uint8_t { kReal, kNoise, kFiller };

inline constexpr size_t kDummyRow = std::numeric_limits<size_t>::max();

struct PaddedTable {
  IdTable table;                                // real rows then dummies, unless shuffled
  std::vector<std::vector<Provenance>> provenance;  // [column][row]
  std::vector<size_t> origin;                   // input row index, or kDummyRow
  size_t tau = 0;

  size_t rows() const { return table.rows(); }
};

// Appends a uniformly random tau-subset of d to column.
std::vector<std::string> pad_single(std::vector<std::string> column,
                                    const std::vector<std::string>& d, size_t tau, Rng& rng);

// Appends m blocks of tau rows. In block l, column l holds a random
// tau-subset of noise[l] and every other column holds this party's fillers
// from filler[l]. Dummy payloads are zero.
PaddedTable pad_multi(const IdTable& table, const DummyUniverse& u, Party party, Rng& rng);

// Wraps a table without padding.
PaddedTable unpadded(const IdTable& table);

// Uniform row permutation; provenance and origin follow their rows.
void shuffle_rows(PaddedTable& t, Rng& rng);

// Distribution of the dummy-collision count between two parties that each
// draw tau of the same 2*tau noise ids: p[z] = C(tau,z)^2 / C(2tau,tau).
struct NoisePmf {
  size_t tau = 0;
  std::vector<double> p;
};
NoisePmf noise_pmf(size_t tau);
std::vector<mpq_class> noise_pmf_exact(size_t tau);
// Inverse-CDF draw from the pmf.
size_t sample_noise(const NoisePmf& pmf, Rng& rng);

// Single-execution delta(epsilon) of the padding mechanism.
long double exact_delta(size_t tau, double epsilon);

// Smallest tau >= 1 with estimate(tau) <= delta. estimate must be
// non-increasing in tau. Doubling search, then bisection.
size_t min_tau_search(const std::function<long double(size_t)>& estimate, double delta);
size_t min_tau_single(double epsilon, double delta);

// Throws ConfigError unless epsilon >= 0 and 0 < delta < 1.
void check_budget(double epsilon, double delta);

}  // namespace wfm

#endif  // WFM_DP_MECH_HPP_
