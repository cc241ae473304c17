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

#include "wfm/channel.hpp"

#include <condition_variable>
#include <deque>
#include <mutex>

#include "wfm/errors.hpp"

namespace wfm {

void Channel::send(const Frame& f) {
  Bytes encoded = encode_frame(f);
  write_frame(encoded);
  stats_.bytes_sent += encoded.size();
  ++stats_.frames_sent;
  if (observer_) observer_(true, f);
}

Frame Channel::recv() {
  Bytes encoded = read_frame();
  Frame f = decode_frame(encoded);
  stats_.bytes_received += encoded.size();
  ++stats_.frames_received;
  if (observer_) observer_(false, f);
  return f;
}

Frame Channel::recv_expect(MessageType type, std::string_view sid) {
  Frame f = recv();
  if (f.type == MessageType::kAbort) {
    throw PeerAbort("peer aborted: " + std::string(f.payload.begin(), f.payload.end()));
  }
  if (f.type != type) {
    throw ProtocolError("expected " + std::string(to_string(type)) + " but received " +
                        std::string(to_string(f.type)));
  }
  if (!sid.empty() && f.sid != sid) {
    throw ProtocolError("expected sid '" + std::string(sid) + "' but received '" + f.sid + "'");
  }
  return f;
}

void Channel::send_abort(std::string_view reason) noexcept {
  try {
    Frame f{MessageType::kAbort, "", Bytes(reason.begin(), reason.end())};
    send(f);
  } catch (...) {
  }
}

namespace {

struct Pipe {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<Bytes> frames;
  bool closed = false;
};

class MemoryChannel final : public Channel {
 public:
  MemoryChannel(std::shared_ptr<Pipe> in, std::shared_ptr<Pipe> out)
      : in_(std::move(in)), out_(std::move(out)) {}
  ~MemoryChannel() override { close(); }

  void close() override {
    for (auto* p : {in_.get(), out_.get()}) {
      std::lock_guard lock(p->mu);
      p->closed = true;
      p->cv.notify_all();
    }
  }

 protected:
  void write_frame(const Bytes& encoded) override {
    std::lock_guard lock(out_->mu);
    if (out_->closed) throw ChannelError("peer closed the channel");
    out_->frames.push_back(encoded);
    out_->cv.notify_one();
  }

  Bytes read_frame() override {
    std::unique_lock lock(in_->mu);
    in_->cv.wait(lock, [&] { return !in_->frames.empty() || in_->closed; });
    if (in_->frames.empty()) throw ChannelError("peer closed the channel");
    Bytes f = std::move(in_->frames.front());
    in_->frames.pop_front();
    return f;
  }

 private:
  std::shared_ptr<Pipe> in_;
  std::shared_ptr<Pipe> out_;
};

}  // namespace

std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> channel_pair() {
  auto ab = std::make_shared<Pipe>();
  auto ba = std::make_shared<Pipe>();
  return {std::make_unique<MemoryChannel>(ba, ab), std::make_unique<MemoryChannel>(ab, ba)};
}

}  // namespace wfm
