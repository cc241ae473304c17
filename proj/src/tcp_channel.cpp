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

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <thread>

#include "wfm/channel.hpp"
#include "wfm/errors.hpp"

namespace wfm {

namespace {

std::pair<std::string, std::string> split_addr(const std::string& addr) {
  auto colon = addr.rfind(':');
  if (colon == std::string::npos) throw ConfigError("address must be host:port, got '" + addr + "'");
  return {addr.substr(0, colon), addr.substr(colon + 1)};
}

addrinfo* resolve(const std::string& addr, bool passive) {
  auto [host, port] = split_addr(addr);
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  int rc = getaddrinfo(host.empty() ? nullptr : host.c_str(), port.c_str(), &hints, &res);
  if (rc != 0) throw ChannelError("cannot resolve '" + addr + "': " + gai_strerror(rc));
  return res;
}

class TcpChannel final : public Channel {
 public:
  explicit TcpChannel(int fd) : fd_(fd) {
    int one = 1;
    setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  }
  ~TcpChannel() override { close(); }

  void close() override {
    if (fd_ >= 0) {
      ::close(fd_);
      fd_ = -1;
    }
  }

 protected:
  void write_frame(const Bytes& encoded) override {
    size_t off = 0;
    while (off < encoded.size()) {
      ssize_t n = ::send(fd_, encoded.data() + off, encoded.size() - off, MSG_NOSIGNAL);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) throw ChannelError(std::string("tcp send failed: ") + std::strerror(errno));
      off += static_cast<size_t>(n);
    }
  }

  Bytes read_frame() override {
    Bytes frame(kFrameHeaderBytes);
    read_exact(frame.data(), kFrameHeaderBytes);
    uint32_t len = decode_frame_length(frame);
    frame.resize(kFrameHeaderBytes + len);
    read_exact(frame.data() + kFrameHeaderBytes, len);
    return frame;
  }

 private:
  void read_exact(uint8_t* out, size_t n) {
    size_t off = 0;
    while (off < n) {
      ssize_t r = ::recv(fd_, out + off, n - off, 0);
      if (r < 0 && errno == EINTR) continue;
      if (r == 0) throw ChannelError("peer closed the connection");
      if (r < 0) throw ChannelError(std::string("tcp recv failed: ") + std::strerror(errno));
      off += static_cast<size_t>(r);
    }
  }

  int fd_;
};

}  // namespace

TcpListener::TcpListener(const std::string& addr) {
  addrinfo* res = resolve(addr, true);
  fd_ = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
  if (fd_ < 0) {
    freeaddrinfo(res);
    throw ChannelError("socket() failed");
  }
  int one = 1;
  setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  if (::bind(fd_, res->ai_addr, res->ai_addrlen) != 0 || ::listen(fd_, 1) != 0) {
    std::string err = std::strerror(errno);
    freeaddrinfo(res);
    ::close(fd_);
    throw ChannelError("cannot listen on '" + addr + "': " + err);
  }
  freeaddrinfo(res);
  sockaddr_in bound{};
  socklen_t len = sizeof bound;
  getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  port_ = ntohs(bound.sin_port);
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<Channel> TcpListener::accept() {
  for (;;) {
    int c = ::accept(fd_, nullptr, nullptr);
    if (c >= 0) return std::make_unique<TcpChannel>(c);
    if (errno != EINTR) throw ChannelError(std::string("accept failed: ") + std::strerror(errno));
  }
}

std::unique_ptr<Channel> tcp_connect(const std::string& addr, int timeout_ms) {
  auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  for (;;) {
    addrinfo* res = resolve(addr, false);
    int fd = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
    int rc = fd < 0 ? -1 : ::connect(fd, res->ai_addr, res->ai_addrlen);
    int err = errno;
    freeaddrinfo(res);
    if (rc == 0) return std::make_unique<TcpChannel>(fd);
    if (fd >= 0) ::close(fd);
    if (err != ECONNREFUSED || std::chrono::steady_clock::now() >= deadline) {
      throw ChannelError("cannot connect to '" + addr + "': " + std::strerror(err));
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
}

}  // namespace wfm
