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

#include "wfm/accountant.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numeric>

#include "wfm/dp_mech.hpp"
#include "wfm/errors.hpp"

namespace wfm {

namespace {

long double log_binom(size_t n, size_t k) {
  return std::lgammal(n + 1.0L) - std::lgammal(k + 1.0L) - std::lgammal(n - k + 1.0L);
}

// FFTW planning is not thread-safe.
std::mutex& fftw_mutex() {
  static std::mutex mu;
  return mu;
}

long double failure_mass(long double inf_mass, size_t k) {
  return 1.0L - std::pow(1.0L - inf_mass, static_cast<long double>(k));
}

}  // namespace

Pld build_pld(size_t tau) {
  if (tau == 0) throw ConfigError("privacy loss needs tau >= 1");
  Pld p;
  p.tau = tau;
  const long double lc = log_binom(2 * tau, tau);
  for (size_t z = 0; z < tau; ++z) {
    p.gamma.push_back(2 * std::log(static_cast<long double>(z + 1) / static_cast<long double>(tau - z)));
    p.mass.push_back(std::exp(2 * log_binom(tau, z) - lc));
  }
  p.infinity_mass = std::exp(-lc);
  return p;
}

FftGrid make_grid(size_t tau, size_t k, size_t bins) {
  if (bins < 2 || (bins & (bins - 1)) != 0) throw ConfigError("FFT bin count must be a power of two");
  if (k == 0) throw ConfigError("need at least one execution");
  FftGrid g;
  g.window = std::max((4.0L * k - 2) * std::log(static_cast<long double>(tau)), 1.0L);
  g.bins = bins;
  g.dx = 2 * g.window / bins;
  if (g.dx > 0.05L) {
    throw ConfigError("FFT grid too coarse (dx = " + std::to_string(static_cast<double>(g.dx)) +
                      "); use more bins");
  }
  return g;
}

CompositionResult estimate_delta_fft(size_t tau, size_t k, double epsilon, size_t bins) {
  if (!(epsilon >= 0)) throw ConfigError("epsilon must be >= 0");
  const Pld pld = build_pld(tau);
  const FftGrid g = make_grid(tau, k, bins);
  const long long n = static_cast<long long>(bins);
  const long long half = n / 2;

  // Offsets are stored circularly: offset q sits at index q mod n, which is
  // the half-swapped form of the window-indexed vector. The ceiling index
  // into [1, n] becomes the offset range [1 - n/2, n/2].
  std::vector<double> x(bins, 0.0);
  for (size_t z = 0; z < pld.gamma.size(); ++z) {
    long long q = static_cast<long long>(std::ceil(pld.gamma[z] / g.dx));
    q = std::clamp(q, 1 - half, half);
    x[static_cast<size_t>((q % n + n) % n)] += static_cast<double>(pld.mass[z]);
  }

  const size_t nc = bins / 2 + 1;
  std::vector<std::complex<double>> spec(nc);
  std::vector<double> b(bins);
  fftw_plan fwd, inv;
  {
    std::lock_guard lock(fftw_mutex());
    fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), x.data(),
                               reinterpret_cast<fftw_complex*>(spec.data()), FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(spec.data()),
                               b.data(), FFTW_ESTIMATE);
  }
  fftw_execute(fwd);
  for (auto& c : spec) c = std::pow(c, static_cast<int>(k));
  fftw_execute(inv);
  {
    std::lock_guard lock(fftw_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
  }

  long double tail = 0;
  for (long long i = 0; i < n; ++i) {
    long long q = i > half ? i - n : i;  // offset in (-n/2, n/2]
    long double loss = q * g.dx;
    if (loss <= epsilon) continue;
    long double mass = b[static_cast<size_t>(i)] / static_cast<long double>(n);
    if (mass <= 0) continue;
    tail += (1.0L - std::exp(static_cast<long double>(epsilon) - loss)) * mass;
  }

  CompositionResult r;
  r.delta = std::clamp(failure_mass(pld.infinity_mass, k) + tail, 0.0L, 1.0L);
  r.tau = tau;
  r.k = k;
  r.epsilon = epsilon;
  r.grid = g;
  return r;
}

namespace {

// Support points are products of (z+1)/(tau-z); keyed by the reduced ratio.
using Ratio = std::pair<uint64_t, uint64_t>;

std::map<Ratio, long double> exact_composition(size_t tau, size_t k) {
  if (tau == 0 || tau > 64 || k == 0 || k > 6) {
    throw ConfigError("brute-force convolution limited to 1 <= tau <= 64, 1 <= k <= 6");
  }
  const Pld pld = build_pld(tau);
  std::map<Ratio, long double> acc{{{1, 1}, 1.0L}};
  for (size_t step = 0; step < k; ++step) {
    std::map<Ratio, long double> next;
    for (const auto& [r, mass] : acc) {
      for (size_t z = 0; z < tau; ++z) {
        unsigned __int128 num = static_cast<unsigned __int128>(r.first) * (z + 1);
        unsigned __int128 den = static_cast<unsigned __int128>(r.second) * (tau - z);
        unsigned __int128 a = num, b = den;
        while (b != 0) {
          unsigned __int128 t = a % b;
          a = b;
          b = t;
        }
        num /= a;
        den /= a;
        next[{static_cast<uint64_t>(num), static_cast<uint64_t>(den)}] += mass * pld.mass[z];
      }
    }
    acc = std::move(next);
  }
  return acc;
}

long double ratio_loss(const Ratio& r) {
  return 2 * (std::log(static_cast<long double>(r.first)) - std::log(static_cast<long double>(r.second)));
}

}  // namespace

long double brute_force_delta(size_t tau, size_t k, double epsilon) {
  auto support = exact_composition(tau, k);
  const Pld pld = build_pld(tau);
  long double tail = 0;
  for (const auto& [r, mass] : support) {
    long double loss = ratio_loss(r);
    if (loss > epsilon) tail += (1.0L - std::exp(static_cast<long double>(epsilon) - loss)) * mass;
  }
  return std::clamp(failure_mass(pld.infinity_mass, k) + tail, 0.0L, 1.0L);
}

long double brute_force_max_loss(size_t tau, size_t k) {
  auto support = exact_composition(tau, k);
  long double best = -INFINITY;
  for (const auto& [r, mass] : support) best = std::max(best, ratio_loss(r));
  return best;
}

size_t find_min_tau(double epsilon, double delta, size_t k, size_t bins) {
  check_budget(epsilon, delta);
  if (k == 0) throw ConfigError("need at least one execution");
  return min_tau_search([&](size_t t) { return estimate_delta_fft(t, k, epsilon, bins).delta; }, delta);
}

}  // namespace wfm
