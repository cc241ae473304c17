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

#ifndef WFM_ERRORS_HPP_
#define WFM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace wfm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed frames, out-of-order messages, count mismatches, peer aborts.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// The peer sent ABORT; the message carries its reason.
class PeerAbort : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

// Transport failures (closed peer, refused connection, short read).
class ChannelError : public Error {
 public:
  using Error::Error;
};

class CryptoError : public Error {
 public:
  using Error::Error;
};

// CSV / table validation failures. The message names the row and column.
class IngestError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace wfm

#endif  // WFM_ERRORS_HPP_
