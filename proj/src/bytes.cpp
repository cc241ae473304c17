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

#include "wfm/bytes.hpp"

#include <openssl/sha.h>

#include "wfm/errors.hpp"

namespace wfm {

std::string to_hex(ByteSpan bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

namespace {
int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

Bytes from_hex(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.size() % 2 != 0) throw ConfigError("hex string has odd length");
  Bytes out(hex.size() / 2);
  for (size_t i = 0; i < out.size(); ++i) {
    int hi = hex_value(hex[2 * i]);
    int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw ConfigError("invalid hex digit");
    out[i] = static_cast<uint8_t>(hi << 4 | lo);
  }
  return out;
}

Bytes sha256(ByteSpan data) {
  Bytes out(SHA256_DIGEST_LENGTH);
  SHA256(data.data(), data.size(), out.data());
  return out;
}

void put_u16(Bytes& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v));
}

void put_u32(Bytes& out, uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<uint8_t>(v >> shift));
  }
}

void put_bytes(Bytes& out, ByteSpan data) {
  out.insert(out.end(), data.begin(), data.end());
}

void put_str16(Bytes& out, std::string_view s) {
  if (s.size() > 0xffff) throw ProtocolError("string too long for u16 prefix");
  put_u16(out, static_cast<uint16_t>(s.size()));
  put_bytes(out, as_bytes(s));
}

void put_blob32(Bytes& out, ByteSpan data) {
  put_u32(out, static_cast<uint32_t>(data.size()));
  put_bytes(out, data);
}

ByteSpan ByteReader::take(size_t n) {
  if (remaining() < n) throw ProtocolError("truncated message");
  ByteSpan s = data_.subspan(pos_, n);
  pos_ += n;
  return s;
}

uint8_t ByteReader::u8() { return take(1)[0]; }

uint16_t ByteReader::u16() {
  auto s = take(2);
  return static_cast<uint16_t>(s[0] << 8 | s[1]);
}

uint32_t ByteReader::u32() {
  auto s = take(4);
  return uint32_t{s[0]} << 24 | uint32_t{s[1]} << 16 | uint32_t{s[2]} << 8 | s[3];
}

std::string ByteReader::str16() {
  auto s = take(u16());
  return {reinterpret_cast<const char*>(s.data()), s.size()};
}

ByteSpan ByteReader::blob32() { return take(u32()); }

void ByteReader::expect_done(const char* what) const {
  if (!done()) {
    throw ProtocolError(std::string("trailing bytes in ") + what);
  }
}

}  // namespace wfm
