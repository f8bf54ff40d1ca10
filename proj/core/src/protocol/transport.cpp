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

#include "idface/protocol/transport.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>

#include "idface/error.hpp"

namespace idface::protocol {

void Transcript::record(bool outbound, const std::vector<std::uint8_t>& frame) {
  std::lock_guard<std::mutex> lock(mu_);
  entries_.push_back(Entry{outbound, frame});
}

std::vector<Transcript::Entry> Transcript::entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_;
}

std::uint64_t Transcript::bytes(bool outbound) const {
  std::lock_guard<std::mutex> lock(mu_);
  std::uint64_t n = 0;
  for (const auto& e : entries_) {
    if (e.outbound == outbound) n += e.frame.size();
  }
  return n;
}

void Transcript::clear() {
  std::lock_guard<std::mutex> lock(mu_);
  entries_.clear();
}

void Transcript::dump(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIoFailure, "cannot write transcript " + path);
  for (const auto& e : entries()) {
    out.put(e.outbound ? '>' : '<');
    out.write(reinterpret_cast<const char*>(e.frame.data()), static_cast<std::streamsize>(e.frame.size()));
  }
}

Message guarded_call(const Handler& handler, const Message& msg) {
  try {
    return handler(msg);
  } catch (const Error& e) {
    return ErrorResponse{e.code(), e.what()};
  } catch (const std::exception& e) {
    return ErrorResponse{ErrorCode::kInvalidArgument, e.what()};
  }
}

Message InProcessLink::call(const Message& msg) {
  const auto request = wire_encode(msg);
  record(true, request);
  const Message reply = guarded_call(handler_, wire_decode(request));
  const auto response = wire_encode(reply);
  record(false, response);
  return wire_decode(response);
}

Endpoint parse_endpoint(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) fail(ErrorCode::kInvalidArgument, "address must be host:port");
  Endpoint ep;
  ep.host = text.substr(0, colon);
  if (ep.host.empty()) ep.host = "127.0.0.1";
  try {
    const unsigned long port = std::stoul(text.substr(colon + 1));
    if (port > 65535) throw std::out_of_range("port");
    ep.port = static_cast<std::uint16_t>(port);
  } catch (const std::exception&) {
    fail(ErrorCode::kInvalidArgument, "bad port in '" + text + "'");
  }
  return ep;
}

namespace {

void write_all(int fd, const std::uint8_t* data, std::size_t len) {
  while (len > 0) {
    const ssize_t n = ::send(fd, data, len, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail(ErrorCode::kTransportFailure, std::string("send: ") + std::strerror(errno));
    }
    data += n;
    len -= static_cast<std::size_t>(n);
  }
}

// Returns bytes read; fewer than len only at EOF.
std::size_t read_all(int fd, std::uint8_t* data, std::size_t len) {
  std::size_t got = 0;
  while (got < len) {
    const ssize_t n = ::recv(fd, data + got, len - got, 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail(ErrorCode::kTransportFailure, std::string("recv: ") + std::strerror(errno));
    }
    if (n == 0) break;
    got += static_cast<std::size_t>(n);
  }
  return got;
}

sockaddr_in resolve(const Endpoint& ep) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (::getaddrinfo(ep.host.c_str(), nullptr, &hints, &res) != 0 || res == nullptr) {
    fail(ErrorCode::kTransportFailure, "cannot resolve " + ep.host);
  }
  sockaddr_in addr = *reinterpret_cast<sockaddr_in*>(res->ai_addr);
  ::freeaddrinfo(res);
  addr.sin_port = htons(ep.port);
  return addr;
}

}  // namespace

void send_frame(int fd, const std::vector<std::uint8_t>& frame) { write_all(fd, frame.data(), frame.size()); }

bool recv_frame(int fd, std::vector<std::uint8_t>& frame) {
  frame.resize(kFrameHeaderBytes);
  const std::size_t got = read_all(fd, frame.data(), kFrameHeaderBytes);
  if (got == 0) return false;
  if (got < kFrameHeaderBytes) fail(ErrorCode::kMalformedFrame, "connection closed inside a frame header");
  const std::uint64_t len = parse_frame_header(frame.data());
  frame.resize(kFrameHeaderBytes + len);
  if (read_all(fd, frame.data() + kFrameHeaderBytes, len) < len) {
    fail(ErrorCode::kMalformedFrame, "connection closed inside a frame");
  }
  return true;
}

TcpLink::TcpLink(const Endpoint& peer) {
  const sockaddr_in addr = resolve(peer);
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) fail(ErrorCode::kTransportFailure, "socket failed");
  if (::connect(fd_, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0) {
    const std::string why = std::strerror(errno);
    ::close(fd_);
    fd_ = -1;
    fail(ErrorCode::kTransportFailure, "connect to " + peer.str() + ": " + why);
  }
  int one = 1;
  ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

TcpLink::~TcpLink() {
  if (fd_ >= 0) ::close(fd_);
}

Message TcpLink::call(const Message& msg) {
  std::lock_guard<std::mutex> lock(mu_);
  const auto request = wire_encode(msg);
  record(true, request);
  send_frame(fd_, request);
  std::vector<std::uint8_t> response;
  if (!recv_frame(fd_, response)) fail(ErrorCode::kTransportFailure, "peer closed the connection");
  record(false, response);
  return wire_decode(response);
}

TcpServer::TcpServer(const Endpoint& listen, Handler handler) : handler_(std::move(handler)) {
  sockaddr_in addr = resolve(listen);
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) fail(ErrorCode::kTransportFailure, "socket failed");
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(listen_fd_, 16) != 0) {
    const std::string why = std::strerror(errno);
    ::close(listen_fd_);
    fail(ErrorCode::kTransportFailure, "cannot listen on " + listen.str() + ": " + why);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  running_ = true;
  acceptor_ = std::thread([this] { accept_loop(); });
}

TcpServer::~TcpServer() { stop(); }

void TcpServer::accept_loop() {
  while (running_) {
    pollfd pfd{listen_fd_, POLLIN, 0};
    const int rc = ::poll(&pfd, 1, 100);
    if (rc <= 0 || !(pfd.revents & POLLIN)) continue;
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    std::lock_guard<std::mutex> lock(workers_mu_);
    client_fds_.push_back(fd);
    workers_.emplace_back([this, fd] { serve(fd); });
  }
}

void TcpServer::serve(int fd) {
  std::vector<std::uint8_t> frame;
  try {
    while (running_ && recv_frame(fd, frame)) {
      Message reply;
      try {
        reply = guarded_call(handler_, wire_decode(frame));
      } catch (const Error& e) {
        reply = ErrorResponse{e.code(), e.what()};
      }
      send_frame(fd, wire_encode(reply));
    }
  } catch (const std::exception&) {
    // Peer vanished or sent garbage framing; drop the connection.
  }
  ::shutdown(fd, SHUT_RDWR);
}

void TcpServer::wait() {
  while (running_) std::this_thread::sleep_for(std::chrono::milliseconds(100));
}

void TcpServer::stop() {
  const bool was_running = running_.exchange(false);
  if (acceptor_.joinable()) acceptor_.join();
  std::vector<std::thread> workers;
  {
    std::lock_guard<std::mutex> lock(workers_mu_);
    for (int fd : client_fds_) ::shutdown(fd, SHUT_RDWR);
    workers.swap(workers_);
  }
  for (auto& t : workers) t.join();
  {
    std::lock_guard<std::mutex> lock(workers_mu_);
    for (int fd : client_fds_) ::close(fd);
    client_fds_.clear();
  }
  if (listen_fd_ >= 0) {
    ::close(listen_fd_);
    listen_fd_ = -1;
  }
  (void)was_running;
}

}  // namespace idface::protocol
