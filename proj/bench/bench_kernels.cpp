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

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "wfm/ahe.hpp"
#include "wfm/kernels.hpp"

using namespace wfm;

namespace {

template <typename Fn>
double time_it(Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-12s serial %8.3f s  parallel %8.3f s  speedup %5.2fx\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 2000;
  std::printf("rows %zu, threads %d\n", n, omp_get_max_threads());

  auto g = make_p256();
  Rng rng = Rng::from_seed(uint64_t{7});
  Scalar k = g->random_scalar(rng);
  std::vector<std::string> ids;
  for (size_t i = 0; i < n; ++i) ids.push_back("user" + std::to_string(i));

  std::vector<GroupElement> a, b;
  double s = time_it([&] { a = kernels::hash_exp(*g, ids, k, Exec::kSerial); });
  double p = time_it([&] { b = kernels::hash_exp(*g, ids, k, Exec::kParallel); });
  row("hash_exp", s, p);
  if (a != b) return 1;

  s = time_it([&] { a = kernels::exp_all(*g, b, k, Exec::kSerial); });
  p = time_it([&] { a = kernels::exp_all(*g, b, k, Exec::kParallel); });
  row("exp", s, p);

  Bytes packed = kernels::encode_all(*g, a, Exec::kSerial);
  s = time_it([&] { b = kernels::decode_all(*g, packed, n, Exec::kSerial); });
  p = time_it([&] { b = kernels::decode_all(*g, packed, n, Exec::kParallel); });
  row("decode", s, p);

  AheKeypair kp = ahe::gen(512, rng);
  std::vector<uint64_t> ms(n, 42);
  Rng r1 = Rng::from_seed(uint64_t{9}), r2 = Rng::from_seed(uint64_t{9});
  std::vector<Ciphertext> c1, c2;
  s = time_it([&] { c1 = ahe::enc_all(kp.pk, ms, r1, Exec::kSerial); });
  p = time_it([&] { c2 = ahe::enc_all(kp.pk, ms, r2, Exec::kParallel); });
  row("paillier_enc", s, p);
  for (size_t i = 0; i < n; ++i) {
    if (c1[i].value != c2[i].value) return 1;
  }
  return 0;
}
