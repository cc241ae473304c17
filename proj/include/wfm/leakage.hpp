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

#ifndef WFM_LEAKAGE_HPP_
#define WFM_LEAKAGE_HPP_

#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "wfm/dp_mech.hpp"
#include "wfm/rng.hpp"

namespace wfm {

enum class OracleMode { kExact, kDpNoised };
std::string to_string(OracleMode m);
OracleMode parse_oracle_mode(std::string_view s);

// Answers |Q ∩ hidden|, plus fresh NoisePmf(tau) noise per query in DP mode.
class SizeOracle {
 public:
  static SizeOracle exact(std::unordered_set<std::string> hidden);
  static SizeOracle dp_noised(std::unordered_set<std::string> hidden, size_t tau, Rng rng);

  size_t query(std::span<const std::string> q);
  size_t queries() const { return queries_; }
  OracleMode mode() const { return mode_; }
  size_t tau() const { return tau_; }
  // Largest possible noise value (0 for the exact oracle).
  size_t noise_max() const { return mode_ == OracleMode::kExact ? 0 : tau_; }
  const std::unordered_set<std::string>& hidden() const { return hidden_; }

 private:
  SizeOracle(OracleMode mode, std::unordered_set<std::string> hidden, size_t tau, Rng rng);

  OracleMode mode_;
  std::unordered_set<std::string> hidden_;
  size_t tau_;
  NoisePmf pmf_;
  Rng rng_;
  size_t queries_ = 0;
};

struct AttackResult {
  std::vector<std::string> targets;
  std::vector<std::string> members;      // claimed members
  std::vector<std::string> non_members;  // claimed non-members
  size_t queries = 0;
  bool budget_exhausted = false;  // some targets were left unclaimed
};

// Depth-first search over a binary partition of the candidates. A node is
// split when its observed size exceeds the threshold; a leaf above the
// threshold is claimed a member, any node at or below it has all of its
// candidates claimed non-members. threshold < 0 selects 0 for the exact
// oracle and tau/2 + 1 for the noised one.
AttackResult attack_bisection(SizeOracle& oracle, const std::vector<std::string>& candidates,
                              size_t query_budget, double threshold = -1);

struct AttackScore {
  size_t true_pos = 0, false_pos = 0, true_neg = 0, false_neg = 0;
  double precision() const;          // 1 when nothing was claimed a member
  double balanced_accuracy() const;  // (TPR + TNR) / 2 over claimed targets
  void add(const AttackScore& o);
};
AttackScore score_attack(const AttackResult& r, const std::unordered_set<std::string>& hidden);

struct LeakageParams {
  OracleMode mode = OracleMode::kExact;
  size_t candidates = 10000;
  double member_fraction = 0.02;
  size_t executions = 20;
  size_t trials = 100;
  size_t tau = 0;  // DP mode only
  uint64_t seed = 1;
};

// Mean fraction of candidates whose membership the attacker has inferred
// with certainty after e queries, e = 1..executions. A node observed at 0
// has no members; a leaf observed at noise_max + 1 or more is a member.
struct LeakageCurve {
  LeakageParams params;
  std::vector<double> fraction;  // index e-1
  std::vector<double> stddev;    // across trials
};
LeakageCurve leakage_curve(const LeakageParams& p);

}  // namespace wfm

#endif  // WFM_LEAKAGE_HPP_
