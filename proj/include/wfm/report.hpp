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

#ifndef WFM_REPORT_HPP_
#define WFM_REPORT_HPP_

#include <string>

#include "json.hpp"
#include "wfm/protocol.hpp"

namespace wfm {

inline constexpr int kReportVersion = 1;

// Run report, schema version 1:
//   report_version, role, variant, tag_width, skip_last_update, group,
//   ahe_bits, m, rows_input, rows_padded,
//   dp {enabled, tau, tau_override, epsilon, delta, executions, universe},
//   sizes [s_1..s_m], sums [decimal strings] (B, sum variant),
//   shares_received, shares_masked (item counts per payload column),
//   seeds {shared, private} (first 8 bytes of SHA-256, hex),
//   traffic {bytes_sent, bytes_received, frames_sent, frames_received,
//            elements_sent},
//   stages [{name, bytes_sent, bytes_received, frames_sent,
//            frames_received, seconds}]
// Timing lives only under stages[].seconds.
nlohmann::json make_report(const WfmOutput& out, const SessionConfig& cfg, size_t input_rows,
                           ByteSpan private_seed = {});

// The report with every timing field removed.
nlohmann::json strip_timing(nlohmann::json report);

std::string seed_fingerprint(ByteSpan seed);
// Fingerprint over every dummy id the plan's seed generates; empty when
// padding is off.
std::string universe_fingerprint(const DpPlan& plan);

}  // namespace wfm

#endif  // WFM_REPORT_HPP_
