// Copyright 2026 The idface Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IDFACE_PROTOCOL_TRANSPORT_HPP_
#define IDFACE_PROTOCOL_TRANSPORT_HPP_

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "idface/protocol/wire.hpp"

namespace idface::protocol {

// Every frame that crossed a link, in order.
class Transcript {
 public:
  struct Entry {
    bool outbound = false;
    std::vector<std::uint8_t> frame;
  };

  void record(bool outbound, const std::vector<std::uint8_t>& frame);
  std::vector<Entry> entries() const;
  std::uint64_t bytes(bool outbound) const;
  void clear();
  // Binary sidecar: per frame one direction byte ('>' or '<') then the frame.
  void dump(const std::string& path) const;

 private:
  mutable std::mutex mu_;
  std::vector<Entry> entries_;
};

// Request/response channel to a peer role.
class Link {
 public:
  virtual ~Link() = default;
  // Sends msg and returns the reply. ErrorResponse replies are returned
  // as-is; use expect_ok to turn them into exceptions.
  virtual Message call(const Message& msg) = 0;
  void set_transcript(std::shared_ptr<Transcript> t) { transcript_ = std::move(t); }

 protected:
  void record(bool outbound, const std::vector<std::uint8_t>& frame) {
    if (transcript_) transcript_->record(outbound, frame);
  }

 private:
  std::shared_ptr<Transcript> transcript_;
};

using Handler = std::function<Message(const Message&)>;

// Wraps a handler so that library errors become ErrorResponse messages.
Message guarded_call(const Handler& handler, const Message& msg);

// Same process, but every message still goes through encode/decode.
class InProcessLink final : public Link {
 public:
  explicit InProcessLink(Handler handler) : handler_(std::move(handler)) {}
  Message call(const Message& msg) override;

 private:
  Handler handler_;
};

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;
  std::string str() const { return host + ":" + std::to_string(port); }
};

// "host:port"; port 0 asks the OS for a free port when listening.
Endpoint parse_endpoint(const std::string& text);

void send_frame(int fd, const std::vector<std::uint8_t>& frame);
// Returns false on clean EOF before the first header byte.
bool recv_frame(int fd, std::vector<std::uint8_t>& frame);

class TcpLink final : public Link {
 public:
  explicit TcpLink(const Endpoint& peer);
  ~TcpLink() override;
  TcpLink(const TcpLink&) = delete;
  TcpLink& operator=(const TcpLink&) = delete;

  Message call(const Message& msg) override;

 private:
  int fd_ = -1;
  std::mutex mu_;
};

// Thread-per-connection server; each connection is served sequentially.
class TcpServer {
 public:
  TcpServer(const Endpoint& listen, Handler handler);
  ~TcpServer();
  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  std::uint16_t port() const { return port_; }
  void stop();
  // Blocks until stop() is called from another thread.
  void wait();
  bool running() const { return running_.load(); }

 private:
  void accept_loop();
  void serve(int fd);

  Handler handler_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> running_{false};
  std::thread acceptor_;
  std::mutex workers_mu_;
  std::vector<std::thread> workers_;
  std::vector<int> client_fds_;
};

}  // namespace idface::protocol

#endif  // IDFACE_PROTOCOL_TRANSPORT_HPP_
