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

#ifndef WFM_CHANNEL_HPP_
#define WFM_CHANNEL_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "wfm/frame.hpp"

namespace wfm {

struct ChannelStats {
  uint64_t bytes_sent = 0;
  uint64_t bytes_received = 0;
  uint64_t frames_sent = 0;
  uint64_t frames_received = 0;
};

// A framed, blocking, FIFO duplex endpoint. One endpoint belongs to exactly
// one session thread.
class Channel {
 public:
  using Observer = std::function<void(bool outgoing, const Frame&)>;

  virtual ~Channel() = default;

  void send(const Frame& f);
  Frame recv();
  // Receives the next frame and checks its type (and sid when non-empty).
  // An ABORT from the peer surfaces as ProtocolError carrying its reason.
  Frame recv_expect(MessageType type, std::string_view sid = {});
  // Best effort; never throws.
  void send_abort(std::string_view reason) noexcept;

  const ChannelStats& stats() const { return stats_; }
  // Called for every frame in either direction (transcript capture).
  void set_observer(Observer obs) { observer_ = std::move(obs); }

  virtual void close() = 0;

 protected:
  virtual void write_frame(const Bytes& encoded) = 0;
  // Returns one complete encoded frame (length field included).
  virtual Bytes read_frame() = 0;

 private:
  ChannelStats stats_;
  Observer observer_;
};

// Two connected in-memory endpoints.
std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> channel_pair();

class TcpListener {
 public:
  // addr is "host:port"; port 0 picks an ephemeral port.
  explicit TcpListener(const std::string& addr);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  uint16_t port() const { return port_; }
  std::unique_ptr<Channel> accept();

 private:
  int fd_ = -1;
  uint16_t port_ = 0;
};

// Retries refused connections until timeout_ms elapses.
std::unique_ptr<Channel> tcp_connect(const std::string& addr, int timeout_ms = 10000);

}  // namespace wfm

#endif  // WFM_CHANNEL_HPP_
