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

#ifndef WFM_DURPRF_HPP_
#define WFM_DURPRF_HPP_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "wfm/channel.hpp"
#include "wfm/group.hpp"
#include "wfm/kernels.hpp"
#include "wfm/rng.hpp"

namespace wfm {

// PRF outputs F_k(x) = H(x)^k under a key split multiplicatively between the
// two parties, index-aligned with the rows that produced them.
struct TagSet {
  std::string sid;  // key epoch that produced the values
  TagWidth width = TagWidth::kFull;
  // Group elements when available; empty once values exist only as
  // truncated tags (updates with a 96-bit reply width).
  std::vector<GroupElement> elements;
  std::vector<TagBytes> tags;

  size_t size() const { return tags.size(); }
};

// Holds one party's local key shares, one per session id. The joint key
// k_A * k_B never exists in either process.
class PrfParty {
 public:
  PrfParty(GroupPtr group, Rng& rng, Exec exec = Exec::kParallel);

  const Group& group() const { return *group_; }

  // Samples a fresh local key for sid. Re-initializing a sid is an error.
  void init(const std::string& sid);
  bool has_session(const std::string& sid) const { return keys_.contains(sid); }

  // Sends {H(x_i)^k_local} in input order as one EVAL_BATCH.
  void eval_send(const std::string& sid, std::span<const std::string> ids, Channel& ch);
  // Receives the peer's batch and raises it to k_local: entry i is
  // H(x_i)^(k_A k_B).
  TagSet eval_recv(const std::string& sid, Channel& ch, TagWidth width = TagWidth::kFull);

  // Blindly moves tags from epoch sid_old to sid_new. The batch is lifted by
  // k_new/k_old, sent in a fresh random order, lifted by the peer, and the
  // order restored, so output[i] = F_{k'}(x_i).
  TagSet update(const std::string& sid_old, const std::string& sid_new, const TagSet& tags,
                Channel& ch, TagWidth reply_width = TagWidth::kFull);
  // Peer side of update. Returns the values it computed, in received order.
  TagSet assist(const std::string& sid_old, const std::string& sid_new, Channel& ch,
                TagWidth reply_width = TagWidth::kFull);

  // Exposes a local key share so tests can build the joint-key oracle.
  const Scalar& key_for_testing(const std::string& sid) const { return key(sid); }
  // Replaces the key of an initialized sid (small-group test vectors).
  void set_key_for_testing(const std::string& sid, const Scalar& k);

 private:
  const Scalar& key(const std::string& sid) const;

  GroupPtr group_;
  Rng& rng_;
  Exec exec_;
  std::map<std::string, Scalar> keys_;
};

}  // namespace wfm

#endif  // WFM_DURPRF_HPP_
