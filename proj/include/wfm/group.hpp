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

#ifndef WFM_GROUP_HPP_
#define WFM_GROUP_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "wfm/bytes.hpp"
#include "wfm/rng.hpp"

namespace wfm {

enum class GroupId : uint8_t { kP256 = 1, kTestModP = 2 };

struct GroupParams {
  GroupId id;
  std::string name;
  mpz_class order;  // prime q
  unsigned security_bits;
};

// Nonzero exponent modulo the group order. Obtain one through Group so the
// range invariant 1 <= value < q is checked against the right modulus.
class Scalar {
 public:
  const mpz_class& value() const { return value_; }
  bool operator==(const Scalar& other) const { return value_ == other.value_; }

 private:
  friend class Group;
  explicit Scalar(mpz_class v) : value_(std::move(v)) {}
  mpz_class value_;
};

// Element of the prime-order group in the backend's internal canonical form
// (uncompressed affine point for curves, residue for the test group).
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(Bytes repr) : repr_(std::move(repr)) {}
  const Bytes& repr() const { return repr_; }
  bool operator==(const GroupElement&) const = default;

 private:
  Bytes repr_;
};

enum class TagWidth : uint8_t { kFull = 0, k96 = 1 };

constexpr size_t kTruncatedTagBytes = 12;

std::string to_string(TagWidth w);
TagWidth parse_tag_width(std::string_view s);

// Equality-only view of an element: the full canonical encoding or its
// least significant 96 bits. Never decoded back into an element.
struct TagBytes {
  std::string bytes;
  bool operator==(const TagBytes&) const = default;
  auto operator<=>(const TagBytes&) const = default;
};

class Group {
 public:
  virtual ~Group() = default;

  const GroupParams& params() const { return params_; }
  const mpz_class& order() const { return params_.order; }

  // Width of the canonical (compressed) wire encoding.
  virtual size_t element_size() const = 0;
  // Try-and-increment over SHA-256(input || u16 counter).
  virtual GroupElement hash_to_group(ByteSpan input) const = 0;
  virtual GroupElement exp(const GroupElement& h, const Scalar& a) const = 0;
  virtual Bytes serialize(const GroupElement& h) const = 0;
  // Throws ProtocolError when the bytes are not a valid group element.
  virtual GroupElement deserialize(ByteSpan bytes) const = 0;

  Scalar random_scalar(Rng& rng) const;
  // Throws CryptoError for values outside [1, q).
  Scalar make_scalar(const mpz_class& v) const;
  Scalar inverse(const Scalar& a) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  // a / b mod q.
  Scalar div(const Scalar& a, const Scalar& b) const;

  TagBytes to_tag(const GroupElement& h, TagWidth width) const;
  size_t tag_size(TagWidth width) const;

 protected:
  explicit Group(GroupParams params) : params_(std::move(params)) {}

 private:
  GroupParams params_;
};

using GroupPtr = std::shared_ptr<const Group>;

// NIST P-256 (prime256v1) through OpenSSL.
GroupPtr make_p256();
// Order-q subgroup of Z_p^*; q must be prime and divide p - 1, p < 2^63.
// Intended for brute-force oracle tests only.
GroupPtr make_test_group(uint64_t p, uint64_t q);
// Safe-prime test group with q around 2^60.
GroupPtr make_default_test_group();

// Test group residue helpers (elements of make_test_group groups).
uint64_t test_group_value(const GroupElement& h);
GroupElement test_group_element(uint64_t v);

}  // namespace wfm

template <>
struct std::hash<wfm::TagBytes> {
  size_t operator()(const wfm::TagBytes& t) const noexcept {
    return std::hash<std::string>{}(t.bytes);
  }
};

#endif  // WFM_GROUP_HPP_
