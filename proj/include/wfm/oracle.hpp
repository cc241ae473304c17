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

#ifndef WFM_ORACLE_HPP_
#define WFM_ORACLE_HPP_

#include <cstdint>
#include <vector>

#include "wfm/table.hpp"

namespace wfm {

// Plaintext waterfall matching. Column b only considers rows that are
// unmatched in every earlier column on both sides. Index sets are sorted
// row indices into the respective input tables.
struct OracleResult {
  std::vector<size_t> sizes;
  std::vector<std::vector<size_t>> matched_a;  // J^b_A
  std::vector<std::vector<size_t>> matched_b;  // J^b_B
  std::vector<uint64_t> sums_b;  // per payload column of B, over all matched B rows
  std::vector<uint64_t> sums_a;  // per payload column of A, over all matched A rows
};

// Tables must have the same number of id columns. Missing cells never match.
OracleResult oracle_wfm(const IdTable& a, const IdTable& b);

}  // namespace wfm

#endif  // WFM_ORACLE_HPP_
