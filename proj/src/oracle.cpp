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

#include "wfm/oracle.hpp"

#include <algorithm>
#include <unordered_map>

#include "wfm/errors.hpp"

namespace wfm {

OracleResult oracle_wfm(const IdTable& a, const IdTable& b) {
  const size_t m = a.num_id_columns();
  if (m == 0 || b.num_id_columns() != m) throw ConfigError("tables need the same nonzero id column count");

  OracleResult out;
  std::vector<bool> done_a(a.rows(), false), done_b(b.rows(), false);
  for (size_t c = 0; c < m; ++c) {
    std::unordered_map<std::string_view, size_t> index_b;
    for (size_t j = 0; j < b.rows(); ++j) {
      if (!done_b[j] && b.ids[c][j]) index_b.emplace(*b.ids[c][j], j);
    }
    std::vector<size_t> ja, jb;
    for (size_t i = 0; i < a.rows(); ++i) {
      if (done_a[i] || !a.ids[c][i]) continue;
      auto it = index_b.find(*a.ids[c][i]);
      if (it == index_b.end()) continue;
      ja.push_back(i);
      jb.push_back(it->second);
    }
    for (size_t i : ja) done_a[i] = true;
    for (size_t j : jb) done_b[j] = true;
    std::sort(jb.begin(), jb.end());
    out.sizes.push_back(ja.size());
    out.matched_a.push_back(std::move(ja));
    out.matched_b.push_back(std::move(jb));
  }

  auto sums = [](const IdTable& t, const std::vector<bool>& done) {
    std::vector<uint64_t> s(t.num_payload_columns(), 0);
    for (size_t c = 0; c < s.size(); ++c) {
      for (size_t r = 0; r < t.rows(); ++r) {
        if (done[r]) s[c] += t.payloads[c][r];
      }
    }
    return s;
  };
  out.sums_b = sums(b, done_b);
  out.sums_a = sums(a, done_a);
  return out;
}

}  // namespace wfm
