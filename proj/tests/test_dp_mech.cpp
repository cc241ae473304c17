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

#include <cmath>
#include <set>
#include <unordered_set>

#include "doctest.h"
#include "support.hpp"
#include "wfm/accountant.hpp"
#include "wfm/dp_mech.hpp"
#include "wfm/errors.hpp"

using namespace wfm;
using namespace wfm::testing;

namespace {

// Pr[z] by enumerating every pair of tau-subsets of a 2tau set.
std::vector<double> enumerate_pmf(size_t tau) {
  const unsigned n = static_cast<unsigned>(2 * tau);
  std::vector<unsigned> subsets;
  for (unsigned s = 0; s < (1u << n); ++s) {
    if (static_cast<size_t>(__builtin_popcount(s)) == tau) subsets.push_back(s);
  }
  std::vector<double> p(tau + 1, 0);
  for (unsigned x : subsets) {
    for (unsigned y : subsets) p[__builtin_popcount(x & y)] += 1;
  }
  for (auto& v : p) v /= static_cast<double>(subsets.size() * subsets.size());
  return p;
}

// Hockey-stick divergence of the observed intersection size between
// neighbours (size s versus s+1), taken over the whole output support.
long double direct_delta(size_t tau, double eps) {
  auto q = noise_pmf_exact(tau);
  auto p = [&](long long o) -> long double {
    return o < 0 || o > static_cast<long long>(tau) ? 0.0L : q[o].get_d();
  };
  long double fwd = 0, back = 0, e = std::exp(static_cast<long double>(eps));
  for (long long o = 0; o <= static_cast<long long>(tau) + 1; ++o) {
    fwd += std::max(p(o) - e * p(o - 1), 0.0L);
    back += std::max(p(o - 1) - e * p(o), 0.0L);
  }
  return std::max(fwd, back);
}

std::vector<std::string> ids(const std::string& prefix, size_t n) {
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

size_t intersect(const std::vector<std::string>& x, const std::vector<std::string>& y) {
  std::unordered_set<std::string> s(x.begin(), x.end());
  size_t c = 0;
  for (const auto& v : y) c += s.count(v);
  return c;
}

}  // namespace

TEST_SUITE("dp_mech") {

TEST_CASE("noise pmf small cases") {
  auto p1 = noise_pmf_exact(1);
  CHECK(p1 == std::vector<mpq_class>{mpq_class(1, 2), mpq_class(1, 2)});
  auto p2 = noise_pmf_exact(2);
  CHECK(p2 == std::vector<mpq_class>{mpq_class(1, 6), mpq_class(2, 3), mpq_class(1, 6)});
  CHECK(noise_pmf_exact(0) == std::vector<mpq_class>{mpq_class(1)});
}

TEST_CASE("noise pmf equals subset enumeration and is exact") {
  for (size_t tau = 1; tau <= 6; ++tau) {
    auto e = enumerate_pmf(tau);
    auto p = noise_pmf(tau);
    for (size_t z = 0; z <= tau; ++z) CHECK(p.p[z] == doctest::Approx(e[z]).epsilon(1e-12));
  }
  for (size_t tau : {1, 8, 77, 191, 400}) {
    auto q = noise_pmf_exact(tau);
    mpq_class total = 0;
    for (const auto& v : q) total += v;
    CHECK(total == 1);
    for (size_t z = 0; z <= tau; ++z) CHECK(q[z] == q[tau - z]);
  }
}

TEST_CASE("pad_single") {
  Rng rng = Rng::from_seed(1);
  auto col = ids("r", 3);
  CHECK(pad_single(col, ids("d", 4), 0, rng) == col);
  int first = 0;
  for (int i = 0; i < 2000; ++i) {
    auto out = pad_single({}, {"d1", "d2"}, 1, rng);
    REQUIRE(out.size() == 1);
    first += out[0] == "d1";
  }
  CHECK(first > 900);
  CHECK(first < 1100);
  CHECK_THROWS_AS(pad_single({"d1"}, {"d1", "d2"}, 1, rng), ConfigError);
  CHECK_THROWS_AS(pad_single({}, {"d1"}, 2, rng), ConfigError);
}

TEST_CASE("two-sided padding intersection follows the pmf") {
  const size_t tau = 8;
  Rng rng = Rng::from_seed(2);
  auto d = ids("noise-", 2 * tau);
  std::vector<long long> samples;
  for (int t = 0; t < 10000; ++t) {
    samples.push_back(static_cast<long long>(intersect(pad_single(ids("a", 5), d, tau, rng),
                                                        pad_single(ids("b", 5), d, tau, rng))));
  }
  CHECK(total_variation(histogram(samples, tau + 1), noise_pmf(tau).p) <= 0.05);
}

TEST_CASE("pad_multi counting") {
  Rng rng = Rng::from_seed(3);
  Bytes seed{1, 2, 3};
  auto u = DummyUniverse::generate(seed, 3, 2);
  IdTable t = make_table({"x", "y", "z"}, {"v"});
  t.add_row({"1", std::nullopt, "3"}, {7});
  t.add_row({"4", "5", std::nullopt}, {8});
  auto p = pad_multi(t, u, Party::kA, rng);
  CHECK(p.rows() == 2 + 3 * 2);
  for (size_t c = 0; c < 3; ++c) {
    size_t noise = 0, filler = 0;
    for (auto pv : p.provenance[c]) {
      noise += pv == Provenance::kNoise;
      filler += pv == Provenance::kFiller;
    }
    CHECK(noise == 2);
    CHECK(filler == 4);
  }
  for (size_t r = 2; r < p.rows(); ++r) {
    CHECK(p.origin[r] == kDummyRow);
    CHECK(p.table.payloads[0][r] == 0);
  }
  for (const auto& col : p.table.ids) {
    std::set<std::string> seen;
    for (const auto& cell : col) {
      if (cell) CHECK(seen.insert(*cell).second);
    }
  }

  IdTable bad = make_table({"x", "y", "z"});
  bad.add_row({u.noise[0][0], std::nullopt, std::nullopt});
  CHECK_THROWS_AS(pad_multi(bad, u, Party::kB, rng), ConfigError);
  CHECK(DummyUniverse::generate(seed, 3, 2).noise == u.noise);
  CHECK_FALSE(DummyUniverse::generate(Bytes{9}, 3, 2).noise == u.noise);
}

TEST_CASE("pad_multi with one column reduces to pad_single") {
  Bytes seed{4};
  auto u = DummyUniverse::generate(seed, 1, 5);
  IdTable t = make_table({"x"});
  t.add_row({"real"});
  Rng r1 = Rng::from_seed(9), r2 = Rng::from_seed(9);
  auto p = pad_multi(t, u, Party::kA, r1);
  auto s = pad_single({"real"}, u.noise[0], 5, r2);
  REQUIRE(p.rows() == s.size());
  for (size_t i = 0; i < s.size(); ++i) CHECK(*p.table.ids[0][i] == s[i]);
}

TEST_CASE("per-column noise is pmf distributed and independent") {
  const size_t tau = 4, m = 2;
  Bytes seed{5};
  auto u = DummyUniverse::generate(seed, m, tau);
  IdTable empty = make_table({"x", "y"});
  Rng rng = Rng::from_seed(4);
  std::vector<std::vector<double>> joint(tau + 1, std::vector<double>(tau + 1, 0));
  std::vector<long long> col0, col1;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    auto a = pad_multi(empty, u, Party::kA, rng), b = pad_multi(empty, u, Party::kB, rng);
    size_t z[2];
    for (size_t c = 0; c < m; ++c) {
      std::vector<std::string> x, y;
      for (const auto& v : a.table.ids[c]) x.push_back(*v);
      for (const auto& v : b.table.ids[c]) y.push_back(*v);
      z[c] = intersect(x, y);
    }
    joint[z[0]][z[1]] += 1;
    col0.push_back(z[0]);
    col1.push_back(z[1]);
  }
  auto pmf = noise_pmf(tau).p;
  CHECK(total_variation(histogram(col0, tau + 1), pmf) <= 0.05);
  CHECK(total_variation(histogram(col1, tau + 1), pmf) <= 0.05);
  // chi-square independence over the cells with enough mass
  auto h0 = histogram(col0, tau + 1), h1 = histogram(col1, tau + 1);
  double chi2 = 0;
  int cells = 0;
  for (size_t i = 0; i <= tau; ++i) {
    for (size_t j = 0; j <= tau; ++j) {
      double e = h0[i] * h1[j] * trials;
      if (e < 5) continue;
      chi2 += (joint[i][j] - e) * (joint[i][j] - e) / e;
      ++cells;
    }
  }
  CHECK(cells >= 9);
  CHECK(chi2 < 39.3);  // 0.001 quantile, 16 degrees of freedom
}

TEST_CASE("shuffle keeps rows together") {
  Bytes seed{6};
  auto u = DummyUniverse::generate(seed, 2, 3);
  IdTable t = make_table({"x", "y"}, {"v"});
  for (int i = 0; i < 10; ++i) t.add_row({"x" + std::to_string(i), "y" + std::to_string(i)}, {uint64_t(i)});
  Rng rng = Rng::from_seed(5);
  auto p = pad_multi(t, u, Party::kA, rng);
  auto before = p;
  shuffle_rows(p, rng);
  CHECK_FALSE(p.table.ids == before.table.ids);
  for (size_t r = 0; r < p.rows(); ++r) {
    if (p.origin[r] == kDummyRow) continue;
    size_t o = p.origin[r];
    CHECK(*p.table.ids[0][r] == "x" + std::to_string(o));
    CHECK(*p.table.ids[1][r] == "y" + std::to_string(o));
    CHECK(p.table.payloads[0][r] == o);
    CHECK(p.provenance[0][r] == Provenance::kReal);
  }
}

TEST_CASE("sample_noise follows the pmf") {
  auto pmf = noise_pmf(6);
  Rng rng = Rng::from_seed(7);
  std::vector<long long> s;
  for (int i = 0; i < 20000; ++i) s.push_back(static_cast<long long>(sample_noise(pmf, rng)));
  CHECK(total_variation(histogram(s, 7), pmf.p) <= 0.03);
}

TEST_CASE("exact delta against the direct divergence") {
  for (size_t tau = 1; tau <= 20; ++tau) {
    for (double eps : {0.0, 0.25, 0.5, 1.0, 2.0, 3.0}) {
      long double want = direct_delta(tau, eps);
      CHECK(static_cast<double>(exact_delta(tau, eps)) == doctest::Approx(static_cast<double>(want)).epsilon(1e-9));
    }
  }
  CHECK(static_cast<double>(exact_delta(1, 0)) == doctest::Approx(0.5));
  // large epsilon leaves only the support mismatch 1/C(2tau,tau)
  CHECK(static_cast<double>(exact_delta(5, 60)) == doctest::Approx(1.0 / 252).epsilon(1e-12));
  CHECK(static_cast<double>(exact_delta(12, 80)) == doctest::Approx(1.0 / 2704156).epsilon(1e-12));
}

TEST_CASE("exact delta shape") {
  // not monotone in tau: delta(1, 0.5) = 1/2 but delta(2, 0.5) = (5 - e^0.5) / 6
  CHECK(static_cast<double>(exact_delta(2, 0.5)) == doctest::Approx((5 - std::exp(0.5)) / 6));
  CHECK(exact_delta(2, 0.5) > exact_delta(1, 0.5));
  // small sawtooth bumps persist (threshold index jumps), e.g. eps=1 near tau=285
  CHECK(exact_delta(286, 1) > exact_delta(285, 1));
  // bisection still lands on the first crossing at practical budgets
  for (double eps : {0.5, 1.0, 2.0}) {
    for (double delta : {1e-5, 1e-6}) {
      const size_t t = min_tau_single(eps, delta);
      CAPTURE(eps);
      CAPTURE(delta);
      for (size_t tau = 1; tau < t; ++tau) REQUIRE(exact_delta(tau, eps) > delta);
      CHECK(exact_delta(t, eps) <= delta);
    }
  }
  for (size_t tau : {4, 50}) {
    for (double eps = 0; eps < 4; eps += 0.25) REQUIRE(exact_delta(tau, eps + 0.25) <= exact_delta(tau, eps));
  }
}

TEST_CASE("min tau search picks the boundary") {
  for (double eps : {1.0, 2.0}) {
    for (double delta : {1e-5, 1e-6}) {
      size_t t = min_tau_single(eps, delta);
      CHECK(exact_delta(t, eps) <= delta);
      CHECK(exact_delta(t - 1, eps) > delta);
    }
  }
  // a step function with a known threshold
  for (size_t th : {1, 2, 3, 17, 64, 65, 1000}) {
    CHECK(min_tau_search([&](size_t t) { return t >= th ? 0.0L : 1.0L; }, 0.5) == th);
  }
  CHECK_THROWS_AS(min_tau_single(-1, 1e-5), ConfigError);
  CHECK_THROWS_AS(min_tau_single(1, 0), ConfigError);
  CHECK_THROWS_AS(min_tau_single(1, 1), ConfigError);
}

TEST_CASE("single execution tau matches the accountant") {
  for (double eps : {1.0, 2.0}) {
    CHECK(find_min_tau(eps, 1e-5, 1) == min_tau_single(eps, 1e-5));
  }
}

}  // TEST_SUITE
