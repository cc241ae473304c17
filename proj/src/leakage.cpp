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

#include "wfm/leakage.hpp"

#include <cmath>
#include <numeric>

#include "wfm/errors.hpp"

namespace wfm {

std::string to_string(OracleMode m) { return m == OracleMode::kExact ? "exact" : "dp"; }

OracleMode parse_oracle_mode(std::string_view s) {
  if (s == "exact") return OracleMode::kExact;
  if (s == "dp") return OracleMode::kDpNoised;
  throw ConfigError("oracle mode must be exact or dp");
}

SizeOracle::SizeOracle(OracleMode mode, std::unordered_set<std::string> hidden, size_t tau, Rng rng)
    : mode_(mode), hidden_(std::move(hidden)), tau_(tau), pmf_(noise_pmf(tau)), rng_(std::move(rng)) {}

SizeOracle SizeOracle::exact(std::unordered_set<std::string> hidden) {
  return SizeOracle(OracleMode::kExact, std::move(hidden), 0, Rng::from_seed(uint64_t{0}));
}

SizeOracle SizeOracle::dp_noised(std::unordered_set<std::string> hidden, size_t tau, Rng rng) {
  return SizeOracle(OracleMode::kDpNoised, std::move(hidden), tau, std::move(rng));
}

size_t SizeOracle::query(std::span<const std::string> q) {
  ++queries_;
  size_t n = 0;
  for (const auto& x : q) n += hidden_.contains(x) ? 1 : 0;
  if (mode_ == OracleMode::kDpNoised) n += sample_noise(pmf_, rng_);
  return n;
}

namespace {

struct Node {
  size_t lo, hi;  // candidate range [lo, hi)
};

// Shared DFS driver. visit(node, observed) returns true to split.
template <typename Visit>
size_t dfs(SizeOracle& oracle, const std::vector<std::string>& cands, size_t budget, Visit&& visit) {
  std::vector<Node> stack{{0, cands.size()}};
  size_t used = 0;
  while (!stack.empty()) {
    if (used >= budget) return stack.size();
    Node n = stack.back();
    stack.pop_back();
    size_t o = oracle.query(std::span(cands).subspan(n.lo, n.hi - n.lo));
    ++used;
    if (visit(n, o) && n.hi - n.lo > 1) {
      size_t mid = n.lo + (n.hi - n.lo) / 2;
      stack.push_back({mid, n.hi});
      stack.push_back({n.lo, mid});
    }
  }
  return 0;
}

}  // namespace

AttackResult attack_bisection(SizeOracle& oracle, const std::vector<std::string>& candidates,
                              size_t query_budget, double threshold) {
  if (candidates.empty()) throw ConfigError("attack needs at least one candidate");
  if (threshold < 0) {
    threshold = oracle.mode() == OracleMode::kExact ? 0.0 : oracle.tau() / 2.0 + 1.0;
  }
  AttackResult r;
  r.targets = candidates;
  const size_t before = oracle.queries();
  size_t pending = dfs(oracle, candidates, query_budget, [&](const Node& n, size_t o) {
    bool above = static_cast<double>(o) > threshold;
    if (!above) {
      for (size_t i = n.lo; i < n.hi; ++i) r.non_members.push_back(candidates[i]);
      return false;
    }
    if (n.hi - n.lo == 1) r.members.push_back(candidates[n.lo]);
    return true;
  });
  r.queries = oracle.queries() - before;
  r.budget_exhausted = pending > 0;
  return r;
}

double AttackScore::precision() const {
  size_t claimed = true_pos + false_pos;
  return claimed == 0 ? 1.0 : static_cast<double>(true_pos) / claimed;
}

double AttackScore::balanced_accuracy() const {
  size_t pos = true_pos + false_neg, neg = true_neg + false_pos;
  double tpr = pos == 0 ? 0.5 : static_cast<double>(true_pos) / pos;
  double tnr = neg == 0 ? 0.5 : static_cast<double>(true_neg) / neg;
  return (tpr + tnr) / 2;
}

void AttackScore::add(const AttackScore& o) {
  true_pos += o.true_pos;
  false_pos += o.false_pos;
  true_neg += o.true_neg;
  false_neg += o.false_neg;
}

AttackScore score_attack(const AttackResult& r, const std::unordered_set<std::string>& hidden) {
  AttackScore s;
  for (const auto& x : r.members) (hidden.contains(x) ? s.true_pos : s.false_pos)++;
  for (const auto& x : r.non_members) (hidden.contains(x) ? s.false_neg : s.true_neg)++;
  return s;
}

LeakageCurve leakage_curve(const LeakageParams& p) {
  if (p.trials < 100) throw ConfigError("leakage curve needs at least 100 trials");
  if (p.executions == 0 || p.candidates == 0) throw ConfigError("need executions and candidates");
  LeakageCurve curve;
  curve.params = p;
  const size_t k = p.executions;
  std::vector<double> sum(k, 0.0), sum2(k, 0.0);

  Rng master = Rng::from_seed(p.seed);
  for (size_t t = 0; t < p.trials; ++t) {
    Rng trial = master.fork("trial:" + std::to_string(t));
    std::vector<std::string> cands;
    std::unordered_set<std::string> hidden;
    for (size_t i = 0; i < p.candidates; ++i) {
      cands.push_back("cand:" + std::to_string(t) + ":" + std::to_string(i));
      if (trial.uniform01() < p.member_fraction) hidden.insert(cands.back());
    }
    SizeOracle oracle = p.mode == OracleMode::kExact
                            ? SizeOracle::exact(hidden)
                            : SizeOracle::dp_noised(hidden, p.tau, trial.fork("noise"));
    const size_t zmax = oracle.noise_max();
    const double threshold = p.mode == OracleMode::kExact ? 0.0 : p.tau / 2.0 + 1.0;

    // inferred[e-1] = certain, correct inferences after e queries
    std::vector<size_t> inferred;
    size_t certain = 0;
    dfs(oracle, cands, k, [&](const Node& n, size_t o) {
      const size_t width = n.hi - n.lo;
      if (o == 0) {
        certain += width;  // nothing in this node can be a member
      } else if (width == 1 && o >= zmax + 1) {
        certain += 1;
      }
      inferred.push_back(certain);
      return static_cast<double>(o) > threshold;
    });
    while (inferred.size() < k) inferred.push_back(certain);
    for (size_t e = 0; e < k; ++e) {
      double f = static_cast<double>(inferred[e]) / p.candidates;
      sum[e] += f;
      sum2[e] += f * f;
    }
  }
  for (size_t e = 0; e < k; ++e) {
    double mean = sum[e] / p.trials;
    curve.fraction.push_back(mean);
    curve.stddev.push_back(std::sqrt(std::max(0.0, sum2[e] / p.trials - mean * mean)));
  }
  return curve;
}

}  // namespace wfm
