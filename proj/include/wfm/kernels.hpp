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

#ifndef WFM_KERNELS_HPP_
#define WFM_KERNELS_HPP_

#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "wfm/group.hpp"

namespace wfm {

// Serial is the reference path; Parallel spreads rows over OpenMP threads.
// Both produce identical outputs for identical inputs.
enum class Exec { kSerial, kParallel };

namespace kernels {

// Runs fn(i) for i in [0, n). Exceptions thrown inside the parallel region
// are captured and the first one is rethrown on the calling thread.
template <typename Fn>
void for_each_index(size_t n, Exec exec, Fn&& fn) {
  if (exec == Exec::kSerial || n < 2) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr first;
  std::mutex mu;
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < count; ++i) {
    try {
      fn(static_cast<size_t>(i));
    } catch (...) {
      std::lock_guard lock(mu);
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

// {hash_to_group(id)^key}
std::vector<GroupElement> hash_exp(const Group& g, std::span<const std::string> ids,
                                   const Scalar& key, Exec exec);
// {h^key}
std::vector<GroupElement> exp_all(const Group& g, std::span<const GroupElement> elems,
                                  const Scalar& key, Exec exec);
// Concatenated canonical encodings, element_size() bytes each.
Bytes encode_all(const Group& g, std::span<const GroupElement> elems, Exec exec);
// Inverse of encode_all; throws ProtocolError on a malformed element.
std::vector<GroupElement> decode_all(const Group& g, ByteSpan packed, size_t count, Exec exec);
std::vector<TagBytes> tags_all(const Group& g, std::span<const GroupElement> elems,
                               TagWidth width, Exec exec);

}  // namespace kernels
}  // namespace wfm

#endif  // WFM_KERNELS_HPP_
