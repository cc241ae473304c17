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

#include "wfm/frame.hpp"

#include "wfm/errors.hpp"

namespace wfm {

std::string_view to_string(MessageType t) {
  switch (t) {
    case MessageType::kSetupPk: return "SETUP_PK";
    case MessageType::kPayloadCts: return "PAYLOAD_CTS";
    case MessageType::kEvalBatch: return "EVAL_BATCH";
    case MessageType::kTagsShuffled: return "TAGS_SHUFFLED";
    case MessageType::kUpdateBatch: return "UPDATE_BATCH";
    case MessageType::kUpdateReply: return "UPDATE_REPLY";
    case MessageType::kSumCt: return "SUM_CT";
    case MessageType::kShareCts: return "SHARE_CTS";
    case MessageType::kSizeConfirm: return "SIZE_CONFIRM";
    case MessageType::kAbort: return "ABORT";
  }
  return "UNKNOWN";
}

bool is_known_message_type(uint8_t raw) {
  return raw >= static_cast<uint8_t>(MessageType::kSetupPk) &&
         raw <= static_cast<uint8_t>(MessageType::kAbort);
}

Bytes encode_frame(const Frame& f) {
  if (f.length() > kMaxFrameLength) {
    throw ProtocolError("frame of " + std::to_string(f.length()) + " bytes exceeds the 64 MiB limit");
  }
  Bytes out;
  out.reserve(f.wire_size());
  put_u32(out, static_cast<uint32_t>(f.length()));
  out.push_back(static_cast<uint8_t>(f.type));
  put_str16(out, f.sid);
  put_bytes(out, f.payload);
  return out;
}

uint32_t decode_frame_length(ByteSpan header) {
  ByteReader r(header);
  uint32_t len = r.u32();
  if (len > kMaxFrameLength) {
    throw ProtocolError("incoming frame length " + std::to_string(len) + " exceeds the 64 MiB limit");
  }
  if (len < 3) throw ProtocolError("frame too short");
  return len;
}

Frame decode_frame_body(ByteSpan body) {
  ByteReader r(body);
  uint8_t raw = r.u8();
  if (!is_known_message_type(raw)) {
    throw ProtocolError("unknown message type " + std::to_string(raw));
  }
  Frame f;
  f.type = static_cast<MessageType>(raw);
  f.sid = r.str16();
  auto rest = r.take(r.remaining());
  f.payload.assign(rest.begin(), rest.end());
  return f;
}

Frame decode_frame(ByteSpan bytes) {
  if (bytes.size() < kFrameHeaderBytes) throw ProtocolError("truncated frame header");
  uint32_t len = decode_frame_length(bytes.first(kFrameHeaderBytes));
  if (bytes.size() != kFrameHeaderBytes + len) throw ProtocolError("frame length mismatch");
  return decode_frame_body(bytes.subspan(kFrameHeaderBytes));
}

}  // namespace wfm
