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

// Raw Ethernet/IPv4/UDP framing. Every packet is one self-contained frame:
//
//   [preamble 8]  ethernet 14 | ipv4 20 | udp 8 | kind 1 | seq 1 |
//   data <=1470 | zero pad | fcs 4
//
// The preamble (7 x 0x55 + 0xD5) is optional and never covered by the FCS.
// Frames are zero-padded so the FCS-covered part is at least 60 bytes
// (64 with FCS). The FCS is CRC-32 per IEEE 802.3 (reflected polynomial
// 0xEDB88320, init and final XOR 0xFFFFFFFF), appended low byte first.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mjstream/error.hpp"

namespace mjstream {

inline constexpr size_t kPreambleSize = 8;
inline constexpr size_t kEthernetHeaderSize = 14;
inline constexpr size_t kIpv4HeaderSize = 20;
inline constexpr size_t kUdpHeaderSize = 8;
inline constexpr size_t kPacketMetaSize = 2;  // kind + seq
inline constexpr size_t kFcsSize = 4;
inline constexpr size_t kMaxDataSize = 1470;
inline constexpr size_t kMinFrameSize = 64;    // FCS included, preamble not
inline constexpr size_t kMaxFrameSize = 1518;  // = headers + 1470 + FCS
inline constexpr uint16_t kEtherTypeIpv4 = 0x0800;
inline constexpr uint8_t kIpProtoUdp = 17;

struct MacAddr {
  std::array<uint8_t, 6> bytes{};

  static MacAddr parse(std::string_view text);  // "aa:bb:cc:dd:ee:ff"
  std::string to_string() const;
  bool operator==(const MacAddr&) const = default;
};

struct Ipv4Addr {
  std::array<uint8_t, 4> bytes{};

  static Ipv4Addr parse(std::string_view text);  // "192.168.1.2"
  std::string to_string() const;
  bool operator==(const Ipv4Addr&) const = default;
};

// Addressing for built frames and the filter applied when parsing.
struct WireConfig {
  MacAddr src_mac{{0x02, 0x00, 0x00, 0x00, 0x00, 0x01}};
  MacAddr dst_mac{{0x02, 0x00, 0x00, 0x00, 0x00, 0x02}};
  Ipv4Addr src_ip{{192, 168, 1, 1}};
  Ipv4Addr dst_ip{{192, 168, 1, 2}};
  uint16_t src_port = 5005;
  uint16_t dst_port = 5005;
  uint8_t ttl = 64;
  bool include_preamble = false;
};

enum class PacketKind : uint8_t { Audio = 0x00, Video = 0x01 };

// The two bytes between the UDP header and the data.
struct PacketMeta {
  PacketKind kind = PacketKind::Audio;
  uint8_t seq = 0;
};

// Streaming CRC-32 (IEEE 802.3): one table lookup per byte.
class Crc32 {
 public:
  void update(uint8_t byte);
  void update(std::span<const uint8_t> bytes);
  // Complemented result; object stays usable for further updates.
  uint32_t value() const { return state_ ^ 0xFFFFFFFFu; }
  // FCS transmission order: least-significant byte first.
  std::array<uint8_t, 4> fcs_bytes() const;

  static uint32_t compute(std::span<const uint8_t> bytes);
  // The 256-entry byte table; entry i is the remainder of the single byte i.
  static const std::array<uint32_t, 256>& table();

 private:
  uint32_t state_ = 0xFFFFFFFFu;
};

// RFC 791 header checksum over a 20-byte header (checksum field zeroed).
uint16_t ipv4_checksum(std::span<const uint8_t> header);

// Builds one complete frame. Throws Error if data exceeds kMaxDataSize.
std::vector<uint8_t> build_frame(const PacketMeta& meta,
                                 std::span<const uint8_t> data,
                                 const WireConfig& config);

enum class ParseStatus : uint8_t {
  Ok = 0,
  BadFcs = 1,    // CRC mismatch; nothing else was looked at
  NotOurs = 2,   // well-formed but filtered (EtherType, protocol, port)
  Malformed = 3  // impossible lengths or field values
};

std::string_view to_string(ParseStatus status);

struct ParsedFrame {
  PacketMeta meta;
  std::vector<uint8_t> data;
};

// Strips the preamble if present, checks the FCS first, then validates and
// filters. On Ok, fills `out`.
ParseStatus parse_frame(std::span<const uint8_t> frame,
                        const WireConfig& config, ParsedFrame& out);

// Field-level view of a frame for inspection tools. No filtering: fills in
// whatever can be read and reports the two checksum verdicts.
struct FrameFields {
  bool has_preamble = false;
  size_t frame_length = 0;  // preamble excluded
  MacAddr dst_mac, src_mac;
  uint16_t ethertype = 0;
  uint8_t ip_version_ihl = 0;
  uint16_t ip_total_length = 0;
  uint8_t ttl = 0;
  uint8_t protocol = 0;
  uint16_t ip_checksum = 0;
  bool ip_checksum_ok = false;
  Ipv4Addr src_ip, dst_ip;
  uint16_t src_port = 0, dst_port = 0;
  uint16_t udp_length = 0;
  uint8_t kind = 0;
  uint8_t seq = 0;
  size_t data_length = 0;
  uint32_t fcs_stored = 0;
  uint32_t fcs_computed = 0;
  bool fcs_ok = false;
};

// Returns false when the frame is too short to carry the fixed headers.
bool dissect_frame(std::span<const uint8_t> frame, FrameFields& out);

}  // namespace mjstream
