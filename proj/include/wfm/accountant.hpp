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

#ifndef WFM_ACCOUNTANT_HPP_
#define WFM_ACCOUNTANT_HPP_

#include <cstddef>
#include <vector>

namespace wfm {

inline constexpr size_t kDefaultFftBins = size_t{1} << 16;

// Privacy-loss distribution of one padding execution. Finite support
// gamma[z] = 2 ln((z+1)/(tau-z)), z = 0..tau-1, ascending.
struct Pld {
  size_t tau = 0;
  std::vector<long double> gamma;
  std::vector<long double> mass;
  long double infinity_mass = 0;
};
Pld build_pld(size_t tau);

struct FftGrid {
  long double window = 0;  // half-width W
  size_t bins = 0;         // n_x
  long double dx = 0;      // 2W / n_x
};
// W = max((4k - 2) ln tau, 1). Throws ConfigError when dx > 0.05 or bins is
// not a power of two.
FftGrid make_grid(size_t tau, size_t k, size_t bins);

struct CompositionResult {
  long double delta = 0;
  size_t tau = 0;
  size_t k = 0;
  double epsilon = 0;
  FftGrid grid;
};

// k-fold composition on a discretized grid. Leakage is rounded up to the
// next bin, so the estimate upper-bounds the exact value up to FFT noise.
CompositionResult estimate_delta_fft(size_t tau, size_t k, double epsilon,
                                     size_t bins = kDefaultFftBins);

// Exact k-fold convolution over rational support points. Limited to
// tau <= 64 and k <= 6.
long double brute_force_delta(size_t tau, size_t k, double epsilon);
// Largest finite privacy loss after k-fold composition, from the exact
// support (same limits).
long double brute_force_max_loss(size_t tau, size_t k);

// Minimal tau with estimate_delta_fft(tau, k, epsilon) <= delta.
size_t find_min_tau(double epsilon, double delta, size_t k, size_t bins = kDefaultFftBins);

}  // namespace wfm

#endif  // WFM_ACCOUNTANT_HPP_
