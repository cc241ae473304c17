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

#include "wfm/durprf.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>

#include "wfm/errors.hpp"

namespace wfm {

namespace {

Bytes pack_tags(std::span<const TagBytes> tags, size_t width) {
  Bytes out(tags.size() * width);
  for (size_t i = 0; i < tags.size(); ++i) {
    std::memcpy(out.data() + i * width, tags[i].bytes.data(), width);
  }
  return out;
}

// UPDATE_BATCH / UPDATE_REPLY payload: str16 sid_new | u8 width | u32 count | values
Bytes encode_update(const std::string& sid_new, TagWidth width, size_t count, ByteSpan values) {
  Bytes p;
  put_str16(p, sid_new);
  p.push_back(static_cast<uint8_t>(width));
  put_u32(p, static_cast<uint32_t>(count));
  put_bytes(p, values);
  return p;
}

struct UpdateMessage {
  std::string sid_new;
  TagWidth width;
  uint32_t count;
  ByteSpan values;
};

UpdateMessage decode_update(const Frame& f) {
  ByteReader r(f.payload);
  UpdateMessage m;
  m.sid_new = r.str16();
  uint8_t w = r.u8();
  if (w > static_cast<uint8_t>(TagWidth::k96)) throw ProtocolError("unknown tag width on the wire");
  m.width = static_cast<TagWidth>(w);
  m.count = r.u32();
  m.values = r.take(r.remaining());
  return m;
}

}  // namespace

PrfParty::PrfParty(GroupPtr group, Rng& rng, Exec exec)
    : group_(std::move(group)), rng_(rng), exec_(exec) {}

void PrfParty::init(const std::string& sid) {
  if (keys_.contains(sid)) throw ProtocolError("duplicate init for sid '" + sid + "'");
  keys_.emplace(sid, group_->random_scalar(rng_));
}

const Scalar& PrfParty::key(const std::string& sid) const {
  auto it = keys_.find(sid);
  if (it == keys_.end()) throw ProtocolError("sid '" + sid + "' was never initialized");
  return it->second;
}

void PrfParty::set_key_for_testing(const std::string& sid, const Scalar& k) {
  key(sid);
  keys_.insert_or_assign(sid, k);
}

void PrfParty::eval_send(const std::string& sid, std::span<const std::string> ids, Channel& ch) {
  auto elems = kernels::hash_exp(*group_, ids, key(sid), exec_);
  Bytes payload;
  put_u32(payload, static_cast<uint32_t>(elems.size()));
  put_bytes(payload, kernels::encode_all(*group_, elems, exec_));
  ch.send(Frame{MessageType::kEvalBatch, sid, std::move(payload)});
}

TagSet PrfParty::eval_recv(const std::string& sid, Channel& ch, TagWidth width) {
  const Scalar& k = key(sid);
  Frame f = ch.recv_expect(MessageType::kEvalBatch, sid);
  ByteReader r(f.payload);
  uint32_t count = r.u32();
  auto received = kernels::decode_all(*group_, r.take(r.remaining()), count, exec_);
  TagSet out;
  out.sid = sid;
  out.width = width;
  out.elements = kernels::exp_all(*group_, received, k, exec_);
  out.tags = kernels::tags_all(*group_, out.elements, width, exec_);
  return out;
}

TagSet PrfParty::update(const std::string& sid_old, const std::string& sid_new, const TagSet& tags,
                        Channel& ch, TagWidth reply_width) {
  if (tags.sid != sid_old) {
    throw ProtocolError("tag set belongs to sid '" + tags.sid + "', not '" + sid_old + "'");
  }
  if (tags.elements.size() != tags.size()) {
    throw ProtocolError("update needs group elements, not truncated tags");
  }
  const Scalar ratio = group_->div(key(sid_new), key(sid_old));
  const size_t n = tags.size();

  auto lifted = kernels::exp_all(*group_, tags.elements, ratio, exec_);
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng_);
  std::vector<GroupElement> shuffled(n);
  for (size_t i = 0; i < n; ++i) shuffled[i] = lifted[perm[i]];

  ch.send(Frame{MessageType::kUpdateBatch, sid_old,
                encode_update(sid_new, TagWidth::kFull, n, kernels::encode_all(*group_, shuffled, exec_))});

  Frame f = ch.recv_expect(MessageType::kUpdateReply, sid_old);
  UpdateMessage reply = decode_update(f);
  if (reply.sid_new != sid_new) throw ProtocolError("update reply is for a different epoch");
  if (reply.count != n) throw ProtocolError("update reply count mismatch");
  if (reply.width != reply_width) throw ProtocolError("update reply has an unexpected tag width");

  TagSet out;
  out.sid = sid_new;
  out.width = reply_width;
  out.tags.resize(n);
  if (reply_width == TagWidth::kFull) {
    auto elems = kernels::decode_all(*group_, reply.values, n, exec_);
    out.elements.resize(n);
    for (size_t i = 0; i < n; ++i) {
      out.tags[perm[i]] = group_->to_tag(elems[i], TagWidth::kFull);
      out.elements[perm[i]] = std::move(elems[i]);
    }
  } else {
    const size_t w = group_->tag_size(reply_width);
    if (reply.values.size() != n * w) throw ProtocolError("update reply size does not match its count");
    for (size_t i = 0; i < n; ++i) {
      auto s = reply.values.subspan(i * w, w);
      out.tags[perm[i]].bytes.assign(reinterpret_cast<const char*>(s.data()), w);
    }
  }
  return out;
}

TagSet PrfParty::assist(const std::string& sid_old, const std::string& sid_new, Channel& ch,
                        TagWidth reply_width) {
  const Scalar ratio = group_->div(key(sid_new), key(sid_old));
  Frame f = ch.recv_expect(MessageType::kUpdateBatch, sid_old);
  UpdateMessage batch = decode_update(f);
  if (batch.sid_new != sid_new) throw ProtocolError("update batch is for a different epoch");
  if (batch.width != TagWidth::kFull) throw ProtocolError("update batch must carry full elements");
  auto received = kernels::decode_all(*group_, batch.values, batch.count, exec_);

  TagSet out;
  out.sid = sid_new;
  out.width = reply_width;
  out.elements = kernels::exp_all(*group_, received, ratio, exec_);
  out.tags = kernels::tags_all(*group_, out.elements, reply_width, exec_);

  Bytes values = reply_width == TagWidth::kFull
                     ? kernels::encode_all(*group_, out.elements, exec_)
                     : pack_tags(out.tags, group_->tag_size(reply_width));
  ch.send(Frame{MessageType::kUpdateReply, sid_old,
                encode_update(sid_new, reply_width, out.size(), values)});
  return out;
}

}  // namespace wfm
