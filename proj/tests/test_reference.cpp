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

// Published reference constants for the padding mechanism and accountant.
// Kept in their own suite so a mismatch is visible without masking the
// self-consistency checks elsewhere.

#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"
#include "wfm/accountant.hpp"
#include "wfm/dp_mech.hpp"
#include "wfm/protocol.hpp"

using namespace wfm;
using namespace wfm::testing;

namespace {

bool within(size_t got, size_t want, size_t slack) {
  return (got > want ? got - want : want - got) <= slack;
}

}  // namespace

TEST_SUITE("reference_values") {

TEST_CASE("single execution tau") {
  CHECK(min_tau_single(2, 1e-5) == 77);
  CHECK(min_tau_single(1, 1e-5) == 114);
  CHECK(min_tau_single(1, 1e-6) == 141);
  CHECK(exact_delta(77, 2) <= 1e-5L);
  CHECK(exact_delta(76, 2) > 1e-5L);
}

TEST_CASE("composed tau") {
  CHECK(within(find_min_tau(2, 1e-5, 1), 77, 2));
  CHECK(within(find_min_tau(1, 1e-5, 1), 114, 2));
  CHECK(within(find_min_tau(2, 1e-5, 6), 191, 2));
  CHECK(within(find_min_tau(1, 1e-5, 6), 285, 2));
  CHECK(estimate_delta_fft(191, 6, 2).delta <= 1e-5L);
}

TEST_CASE("fft against brute force at k=2, tau=8, eps=1") {
  long double fft = estimate_delta_fft(8, 2, 1).delta;
  long double bf = brute_force_delta(8, 2, 1);
  CAPTURE(static_cast<double>(fft - bf));
  CHECK(std::abs(static_cast<double>(fft - bf)) <= 1e-6);
}

TEST_CASE("planner and cli agree on the six-execution tau") {
  CHECK(plan_dp(2, 1e-5, 6, 3, Bytes{1}).tau == 191);
  int code = -1;
  std::string out = temp_path("ref_acc.out");
  code = wait_exit(spawn({WFM_CLI, "accountant", "--epsilon", "2", "--delta", "1e-5", "--executions", "6"}, out));
  REQUIRE(code == 0);
  auto j = nlohmann::json::parse(read_file(out));
  std::remove(out.c_str());
  CHECK(j["tau"] == 191);
}

}  // TEST_SUITE
