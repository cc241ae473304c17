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

#ifndef WFM_FRAME_HPP_
#define WFM_FRAME_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "wfm/bytes.hpp"

namespace wfm {

// Wire layout (big-endian):
//   u32 length | u8 type | u16 sid_len | sid | payload
// length counts everything after itself.
enum class MessageType : uint8_t {
  kSetupPk = 1,
  kPayloadCts = 2,
  kEvalBatch = 3,
  kTagsShuffled = 4,
  kUpdateBatch = 5,
  kUpdateReply = 6,
  kSumCt = 7,
  kShareCts = 8,
  kSizeConfirm = 9,
  kAbort = 10,
};

constexpr uint32_t kMaxFrameLength = 64u << 20;
constexpr size_t kFrameHeaderBytes = 4;

std::string_view to_string(MessageType t);
bool is_known_message_type(uint8_t raw);

struct Frame {
  MessageType type = MessageType::kAbort;
  std::string sid;
  Bytes payload;

  bool operator==(const Frame&) const = default;
  // Value of the length field.
  size_t length() const { return 1 + 2 + sid.size() + payload.size(); }
  size_t wire_size() const { return kFrameHeaderBytes + length(); }
};

// Throws ProtocolError for frames longer than kMaxFrameLength.
Bytes encode_frame(const Frame& f);
// Decodes the bytes following the length field.
Frame decode_frame_body(ByteSpan body);
// Decodes a complete frame including its length field.
Frame decode_frame(ByteSpan bytes);
// Parses and validates a length field.
uint32_t decode_frame_length(ByteSpan header);

}  // namespace wfm

#endif  // WFM_FRAME_HPP_
