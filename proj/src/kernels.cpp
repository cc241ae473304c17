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

#include "wfm/kernels.hpp"

#include <cstring>

#include "wfm/errors.hpp"

namespace wfm::kernels {

std::vector<GroupElement> hash_exp(const Group& g, std::span<const std::string> ids,
                                   const Scalar& key, Exec exec) {
  std::vector<GroupElement> out(ids.size());
  for_each_index(ids.size(), exec, [&](size_t i) {
    out[i] = g.exp(g.hash_to_group(as_bytes(ids[i])), key);
  });
  return out;
}

std::vector<GroupElement> exp_all(const Group& g, std::span<const GroupElement> elems,
                                  const Scalar& key, Exec exec) {
  std::vector<GroupElement> out(elems.size());
  for_each_index(elems.size(), exec, [&](size_t i) { out[i] = g.exp(elems[i], key); });
  return out;
}

Bytes encode_all(const Group& g, std::span<const GroupElement> elems, Exec exec) {
  const size_t w = g.element_size();
  Bytes out(elems.size() * w);
  for_each_index(elems.size(), exec, [&](size_t i) {
    Bytes e = g.serialize(elems[i]);
    std::memcpy(out.data() + i * w, e.data(), w);
  });
  return out;
}

std::vector<GroupElement> decode_all(const Group& g, ByteSpan packed, size_t count, Exec exec) {
  const size_t w = g.element_size();
  if (packed.size() != count * w) {
    throw ProtocolError("element batch size does not match its count");
  }
  std::vector<GroupElement> out(count);
  for_each_index(count, exec, [&](size_t i) { out[i] = g.deserialize(packed.subspan(i * w, w)); });
  return out;
}

std::vector<TagBytes> tags_all(const Group& g, std::span<const GroupElement> elems,
                               TagWidth width, Exec exec) {
  std::vector<TagBytes> out(elems.size());
  for_each_index(elems.size(), exec, [&](size_t i) { out[i] = g.to_tag(elems[i], width); });
  return out;
}

}  // namespace wfm::kernels
