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

// Thin POSIX UDP wrappers for live mode. On a real socket the OS supplies
// the Ethernet/IP/UDP framing, so datagrams carry the kind byte onward:
// kind | seq | data.

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mjstream/error.hpp"
#include "mjstream/wire.hpp"

namespace mjstream {

// kind + seq + data <-> datagram bytes.
std::vector<uint8_t> datagram_serialize(const PacketMeta& meta,
                                        std::span<const uint8_t> data);
// Throws MalformedStreamError on empty input or unknown kind byte.
void datagram_parse(std::span<const uint8_t> datagram, PacketMeta& meta,
                    std::vector<uint8_t>& data);

class UdpSender {
 public:
  UdpSender(const std::string& host, uint16_t port);
  ~UdpSender();
  UdpSender(const UdpSender&) = delete;
  UdpSender& operator=(const UdpSender&) = delete;

  void send(std::span<const uint8_t> datagram);

 private:
  int fd_ = -1;
};

class UdpReceiver {
 public:
  explicit UdpReceiver(uint16_t port);
  ~UdpReceiver();
  UdpReceiver(const UdpReceiver&) = delete;
  UdpReceiver& operator=(const UdpReceiver&) = delete;

  // Blocks up to `timeout`; empty result on timeout.
  std::optional<std::vector<uint8_t>> receive(std::chrono::milliseconds timeout);
  uint16_t port() const { return port_; }

 private:
  int fd_ = -1;
  uint16_t port_ = 0;
};

}  // namespace mjstream
