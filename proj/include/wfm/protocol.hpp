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

#ifndef WFM_PROTOCOL_HPP_
#define WFM_PROTOCOL_HPP_

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wfm/accountant.hpp"
#include "wfm/channel.hpp"
#include "wfm/dp_mech.hpp"
#include "wfm/group.hpp"
#include "wfm/kernels.hpp"
#include "wfm/rng.hpp"
#include "wfm/table.hpp"

namespace wfm {

// kSum: B learns the sum of its matched payloads.
// kShare: B and A hold additive shares of each matched B payload.
// kBoth: both sides carry payloads; each side receives shares of its
// matched payloads and keeps the masks of the peer's.
enum class Variant : uint8_t { kSum = 1, kShare = 2, kBoth = 3 };
std::string to_string(Variant v);
Variant parse_variant(std::string_view s);

struct DpPlan {
  double epsilon = 0;
  double delta = 0;
  size_t executions = 1;
  size_t m = 1;
  size_t tau = 0;
  bool enabled = false;       // false is the tau = 0 test mode
  bool tau_override = false;  // tau given explicitly instead of derived
  Bytes seed;                 // shared dummy seed, agreed out of band
};

// tau = find_min_tau(epsilon, delta, k).
DpPlan plan_dp(double epsilon, double delta, size_t k, size_t m, Bytes seed,
               size_t bins = kDefaultFftBins);
DpPlan plan_disabled(size_t m);
DpPlan plan_with_tau(size_t tau, size_t m, Bytes seed);

// Pads every column with pad_multi and shuffles rows (tau > 0), or returns
// the table unchanged (tau = 0).
PaddedTable dp_enhance(const IdTable& table, const DpPlan& plan, Party party, Rng& rng);

struct SessionConfig {
  Variant variant = Variant::kSum;
  TagWidth tag_width = TagWidth::kFull;
  // Leave the last column's tags in their first-round key epoch.
  bool skip_last_update = false;
  unsigned ahe_bits = 512;
  Exec exec = Exec::kParallel;
  GroupPtr group;  // P-256 when null
  DpPlan plan;
};

struct StageStats {
  std::string name;
  ChannelStats traffic;
  double seconds = 0;
};

struct RunStats {
  std::vector<StageStats> stages;
  ChannelStats total;
  uint64_t elements_sent = 0;  // group elements and tags written by this party
};

struct WfmOutput {
  Party party = Party::kA;
  std::vector<size_t> sizes;
  // Matched rows of the peer's padded table per column, sorted (A holds
  // J^b_B, B holds J^b_A). Empty when this party never learns them.
  std::vector<std::optional<std::vector<size_t>>> peer_matched;
  // Sum variant, party B: one sum per payload column.
  std::vector<mpz_class> sums;
  // Shares received and decrypted by this party, [payload column][item].
  std::vector<std::vector<mpz_class>> received_shares;
  mpz_class received_modulus;
  // Masks this party keeps (-r mod N), aligned with the peer's received shares.
  std::vector<std::vector<mpz_class>> mask_shares;
  mpz_class mask_modulus;
  PaddedTable padded;
  RunStats stats;
};

// Both parties must use equal configs and the same plan. Errors abort the
// session: the peer receives ABORT and the caller sees ProtocolError (or
// ChannelError, PeerAbort) naming the stage.
WfmOutput run_party_a(const IdTable& table, const SessionConfig& cfg, Channel& ch, Rng& rng);
WfmOutput run_party_b(const IdTable& table, const SessionConfig& cfg, Channel& ch, Rng& rng);

// Key epochs used for column b (1-based).
std::string column_sid(size_t b);
std::string update_sid(size_t b);

}  // namespace wfm

#endif  // WFM_PROTOCOL_HPP_
