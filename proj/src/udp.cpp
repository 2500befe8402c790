/*
 * Copyright 2026 The mjstream Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mjstream/udp.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace mjstream {

std::vector<uint8_t> datagram_serialize(const PacketMeta& meta,
                                        std::span<const uint8_t> data) {
  std::vector<uint8_t> out;
  out.reserve(2 + data.size());
  out.push_back(uint8_t(meta.kind));
  out.push_back(meta.seq);
  out.insert(out.end(), data.begin(), data.end());
  return out;
}

void datagram_parse(std::span<const uint8_t> datagram, PacketMeta& meta,
                    std::vector<uint8_t>& data) {
  if (datagram.size() < 2)
    throw MalformedStreamError("datagram shorter than its metadata");
  if (datagram[0] > 0x01)
    throw MalformedStreamError("unknown packet kind byte");
  meta.kind = PacketKind(datagram[0]);
  meta.seq = datagram[1];
  data.assign(datagram.begin() + 2, datagram.end());
}

namespace {

[[noreturn]] void throw_errno(const std::string& what) {
  throw IoError(what + ": " + std::strerror(errno));
}

}  // namespace

UdpSender::UdpSender(const std::string& host, uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
  if (fd_ < 0) throw_errno("socket");
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(fd_);
    fd_ = -1;
    throw IoError("bad IPv4 host: " + host);
  }
  if (::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
    int e = errno;
    ::close(fd_);
    fd_ = -1;
    errno = e;
    throw_errno("connect");
  }
}

UdpSender::~UdpSender() {
  if (fd_ >= 0) ::close(fd_);
}

void UdpSender::send(std::span<const uint8_t> datagram) {
  ssize_t n = ::send(fd_, datagram.data(), datagram.size(), 0);
  if (n < 0) throw_errno("send");
  if (size_t(n) != datagram.size()) throw IoError("short datagram send");
}

UdpReceiver::UdpReceiver(uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
  if (fd_ < 0) throw_errno("socket");
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_ANY);
  addr.sin_port = htons(port);
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
    int e = errno;
    ::close(fd_);
    fd_ = -1;
    errno = e;
    throw_errno("bind");
  }
  socklen_t len = sizeof addr;
  if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len) == 0)
    port_ = ntohs(addr.sin_port);  // resolves port 0 to the assigned one
}

UdpReceiver::~UdpReceiver() {
  if (fd_ >= 0) ::close(fd_);
}

std::optional<std::vector<uint8_t>> UdpReceiver::receive(
    std::chrono::milliseconds timeout) {
  timeval tv{};
  tv.tv_sec = long(timeout.count() / 1000);
  tv.tv_usec = long(timeout.count() % 1000) * 1000;
  ::setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);

  std::vector<uint8_t> buf(2048);
  ssize_t n = ::recv(fd_, buf.data(), buf.size(), 0);
  if (n < 0) {
    if (errno == EAGAIN || errno == EWOULDBLOCK || errno == EINTR)
      return std::nullopt;
    throw_errno("recv");
  }
  buf.resize(size_t(n));
  return buf;
}

}  // namespace mjstream
