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

#include "wfm/dp_mech.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "wfm/errors.hpp"

namespace wfm {

std::string to_string(Party p) { return p == Party::kA ? "a" : "b"; }

namespace {

std::string dummy_id(ByteSpan seed, std::string_view kind, size_t col, size_t i) {
  Bytes msg(seed.begin(), seed.end());
  std::string label = std::string(kind) + ":" + std::to_string(col + 1) + ":" + std::to_string(i);
  put_str16(msg, label);
  Bytes digest = sha256(msg);
  return std::string(kReservedPrefix) + label + ":" + to_hex(ByteSpan(digest).first(8));
}

long double log_binom(size_t n, size_t k) {
  return std::lgammal(n + 1.0L) - std::lgammal(k + 1.0L) - std::lgammal(n - k + 1.0L);
}

}  // namespace

DummyUniverse DummyUniverse::generate(ByteSpan seed, size_t m, size_t tau) {
  if (m == 0) throw ConfigError("dummy universe needs m >= 1");
  DummyUniverse u;
  u.m = m;
  u.tau = tau;
  u.noise.resize(m);
  u.filler.resize(m);
  for (size_t l = 0; l < m; ++l) {
    for (size_t i = 0; i < 2 * tau; ++i) u.noise[l].push_back(dummy_id(seed, "dmy", l, i));
    for (size_t i = 0; i < 2 * tau * m; ++i) u.filler[l].push_back(dummy_id(seed, "fil", l, i));
  }
  return u;
}

void DummyUniverse::check_disjoint(const IdTable& t) const {
  std::unordered_set<std::string_view> all;
  for (const auto& s : noise) all.insert(s.begin(), s.end());
  for (const auto& s : filler) all.insert(s.begin(), s.end());
  for (size_t c = 0; c < t.ids.size(); ++c) {
    for (size_t r = 0; r < t.rows(); ++r) {
      if (t.ids[c][r] && all.contains(*t.ids[c][r])) {
        throw ConfigError("dummy universe overlaps a real id at row " + std::to_string(r));
      }
    }
  }
}

std::vector<std::string> pad_single(std::vector<std::string> column,
                                    const std::vector<std::string>& d, size_t tau, Rng& rng) {
  if (d.size() < tau) throw ConfigError("noise set smaller than tau");
  std::unordered_set<std::string_view> real(column.begin(), column.end());
  for (const auto& x : d) {
    if (real.contains(x)) throw ConfigError("noise set overlaps a real id");
  }
  std::vector<size_t> idx(d.size());
  std::iota(idx.begin(), idx.end(), size_t{0});
  for (size_t i = 0; i < tau; ++i) {
    size_t j = i + rng.uniform_below(idx.size() - i);
    std::swap(idx[i], idx[j]);
    column.push_back(d[idx[i]]);
  }
  return column;
}

PaddedTable unpadded(const IdTable& table) {
  PaddedTable out;
  out.table = table;
  out.provenance.assign(table.num_id_columns(), std::vector<Provenance>(table.rows(), Provenance::kReal));
  out.origin.resize(table.rows());
  std::iota(out.origin.begin(), out.origin.end(), size_t{0});
  return out;
}

PaddedTable pad_multi(const IdTable& table, const DummyUniverse& u, Party party, Rng& rng) {
  const size_t m = table.num_id_columns();
  const size_t tau = u.tau;
  if (u.m != m) throw ConfigError("dummy universe built for a different column count");
  u.check_disjoint(table);

  PaddedTable out = unpadded(table);
  out.tau = tau;
  if (tau == 0) return out;

  // noise[k] for column k, sampled once per column
  std::vector<std::vector<std::string>> noise(m);
  for (size_t k = 0; k < m; ++k) noise[k] = pad_single({}, u.noise[k], tau, rng);

  const size_t half = party == Party::kA ? 0 : tau * m;
  for (size_t l = 0; l < m; ++l) {
    for (size_t i = 0; i < tau; ++i) {
      std::vector<Cell> cells(m);
      for (size_t k = 0; k < m; ++k) {
        if (k == l) {
          cells[k] = noise[k][i];
          out.provenance[k].push_back(Provenance::kNoise);
        } else {
          cells[k] = u.filler[l][half + k * tau + i];
          out.provenance[k].push_back(Provenance::kFiller);
        }
      }
      out.table.add_row(std::move(cells), std::vector<uint64_t>(table.num_payload_columns(), 0));
      out.origin.push_back(kDummyRow);
    }
  }
  return out;
}

void shuffle_rows(PaddedTable& t, Rng& rng) {
  const size_t n = t.rows();
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  auto apply = [&](auto& v) {
    auto copy = v;
    for (size_t i = 0; i < n; ++i) v[i] = std::move(copy[perm[i]]);
  };
  for (auto& col : t.table.ids) apply(col);
  for (auto& col : t.table.payloads) apply(col);
  for (auto& col : t.provenance) apply(col);
  apply(t.origin);
}

std::vector<mpq_class> noise_pmf_exact(size_t tau) {
  mpz_class total;
  mpz_bin_uiui(total.get_mpz_t(), 2 * tau, tau);
  std::vector<mpq_class> p(tau + 1);
  for (size_t z = 0; z <= tau; ++z) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), tau, z);
    p[z] = mpq_class(c * c, total);
    p[z].canonicalize();
  }
  return p;
}

NoisePmf noise_pmf(size_t tau) {
  NoisePmf out;
  out.tau = tau;
  for (const auto& q : noise_pmf_exact(tau)) out.p.push_back(q.get_d());
  return out;
}

size_t sample_noise(const NoisePmf& pmf, Rng& rng) {
  double u = rng.uniform01();
  double acc = 0;
  for (size_t z = 0; z < pmf.p.size(); ++z) {
    acc += pmf.p[z];
    if (u < acc) return z;
  }
  return pmf.tau;
}

long double exact_delta(size_t tau, double epsilon) {
  if (tau == 0) return 1.0L;
  const long double lc = log_binom(2 * tau, tau);
  const long double h = std::exp(static_cast<long double>(epsilon) / 2);
  const long double lower = std::ceil((tau * h - 1) / (h + 1));
  long double delta = std::exp(-lc);
  for (size_t z = lower < 0 ? 0 : static_cast<size_t>(lower); z < tau; ++z) {
    long double a = std::exp(2 * log_binom(tau, z) - lc);
    long double b = std::exp(2 * log_binom(tau, z + 1) - lc + static_cast<long double>(epsilon));
    delta += a - b;
  }
  return std::clamp(delta, 0.0L, 1.0L);
}

void check_budget(double epsilon, double delta) {
  if (!(epsilon >= 0) || !std::isfinite(epsilon)) throw ConfigError("epsilon must be finite and >= 0");
  if (!(delta > 0 && delta < 1)) throw ConfigError("delta must lie in (0, 1)");
}

size_t min_tau_search(const std::function<long double(size_t)>& estimate, double delta) {
  constexpr size_t kLimit = size_t{1} << 24;
  size_t hi = 1;
  while (estimate(hi) > delta) {
    if (hi >= kLimit) throw ConfigError("no tau below 2^24 meets the budget");
    hi *= 2;
  }
  // estimate(lo) > delta holds throughout, with estimate(0) taken as 1.
  size_t lo = hi / 2;
  while (hi - lo > 1) {
    size_t mid = lo + (hi - lo) / 2;
    if (estimate(mid) > delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

size_t min_tau_single(double epsilon, double delta) {
  check_budget(epsilon, delta);
  return min_tau_search([&](size_t t) { return exact_delta(t, epsilon); }, delta);
}

}  // namespace wfm
