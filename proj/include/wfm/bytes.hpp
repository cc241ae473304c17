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

#ifndef WFM_BYTES_HPP_
#define WFM_BYTES_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wfm {

using Bytes = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;

inline ByteSpan as_bytes(std::string_view s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

std::string to_hex(ByteSpan bytes);
Bytes from_hex(std::string_view hex);

Bytes sha256(ByteSpan data);

// Big-endian append helpers used by the wire codecs.
void put_u16(Bytes& out, uint16_t v);
void put_u32(Bytes& out, uint32_t v);
void put_bytes(Bytes& out, ByteSpan data);
// u16 length prefix followed by the raw string.
void put_str16(Bytes& out, std::string_view s);
// u32 length prefix followed by the raw bytes.
void put_blob32(Bytes& out, ByteSpan data);

// Sequential reader over a byte buffer. Every accessor throws ProtocolError
// when the buffer is too short, so truncated frames never read out of range.
class ByteReader {
 public:
  explicit ByteReader(ByteSpan data) : data_(data) {}

  uint8_t u8();
  uint16_t u16();
  uint32_t u32();
  ByteSpan take(size_t n);
  std::string str16();
  ByteSpan blob32();

  size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return remaining() == 0; }
  void expect_done(const char* what = "message") const;

 private:
  ByteSpan data_;
  size_t pos_ = 0;
};

}  // namespace wfm

#endif  // WFM_BYTES_HPP_
