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

#include "wfm/report.hpp"

#include "wfm/dp_mech.hpp"

namespace wfm {

std::string seed_fingerprint(ByteSpan seed) {
  if (seed.empty()) return "";
  Bytes d = sha256(seed);
  return to_hex(ByteSpan(d).first(8));
}

std::string universe_fingerprint(const DpPlan& plan) {
  if (!plan.enabled || plan.tau == 0) return "";
  auto u = DummyUniverse::generate(plan.seed, plan.m, plan.tau);
  Bytes all;
  for (const auto* sets : {&u.noise, &u.filler}) {
    for (const auto& s : *sets) {
      for (const auto& id : s) put_str16(all, id);
    }
  }
  return seed_fingerprint(all);
}

nlohmann::json make_report(const WfmOutput& out, const SessionConfig& cfg, size_t input_rows,
                           ByteSpan private_seed) {
  using nlohmann::json;
  json r;
  r["report_version"] = kReportVersion;
  r["role"] = to_string(out.party);
  r["variant"] = to_string(cfg.variant);
  r["tag_width"] = to_string(cfg.tag_width);
  r["skip_last_update"] = cfg.skip_last_update;
  r["group"] = cfg.group ? cfg.group->params().name : make_p256()->params().name;
  r["ahe_bits"] = cfg.ahe_bits;
  r["m"] = cfg.plan.m;
  r["rows_input"] = input_rows;
  r["rows_padded"] = out.padded.rows();
  r["dp"] = {{"enabled", cfg.plan.enabled},
             {"tau", cfg.plan.tau},
             {"tau_override", cfg.plan.tau_override},
             {"epsilon", cfg.plan.epsilon},
             {"delta", cfg.plan.delta},
             {"executions", cfg.plan.executions},
             {"universe", universe_fingerprint(cfg.plan)}};
  r["sizes"] = out.sizes;
  json sums = json::array();
  for (const auto& s : out.sums) sums.push_back(s.get_str());
  r["sums"] = sums;
  json recv = json::array(), masked = json::array();
  for (const auto& c : out.received_shares) recv.push_back(c.size());
  for (const auto& c : out.mask_shares) masked.push_back(c.size());
  r["shares_received"] = recv;
  r["shares_masked"] = masked;
  r["seeds"] = {{"shared", seed_fingerprint(cfg.plan.seed)}, {"private", seed_fingerprint(private_seed)}};
  const auto& t = out.stats.total;
  r["traffic"] = {{"bytes_sent", t.bytes_sent},
                  {"bytes_received", t.bytes_received},
                  {"frames_sent", t.frames_sent},
                  {"frames_received", t.frames_received},
                  {"elements_sent", out.stats.elements_sent}};
  json stages = json::array();
  for (const auto& s : out.stats.stages) {
    stages.push_back({{"name", s.name},
                      {"bytes_sent", s.traffic.bytes_sent},
                      {"bytes_received", s.traffic.bytes_received},
                      {"frames_sent", s.traffic.frames_sent},
                      {"frames_received", s.traffic.frames_received},
                      {"seconds", s.seconds}});
  }
  r["stages"] = stages;
  return r;
}

nlohmann::json strip_timing(nlohmann::json report) {
  if (report.contains("stages")) {
    for (auto& s : report["stages"]) s.erase("seconds");
  }
  return report;
}

}  // namespace wfm
