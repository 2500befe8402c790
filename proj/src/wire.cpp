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

#include "mjstream/wire.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>

namespace mjstream {

namespace {

constexpr uint32_t kCrcPoly = 0xEDB88320u;  // reflected 802.3 polynomial

const std::array<uint32_t, 256>& crc_table() {
  static const std::array<uint32_t, 256> table = [] {
    std::array<uint32_t, 256> t{};
    for (uint32_t i = 0; i < 256; ++i) {
      uint32_t r = i;
      for (int b = 0; b < 8; ++b)
        r = (r >> 1) ^ (r & 1 ? kCrcPoly : 0);
      t[i] = r;
    }
    return t;
  }();
  return table;
}

constexpr std::array<uint8_t, kPreambleSize> kPreamble = {
    0x55, 0x55, 0x55, 0x55, 0x55, 0x55, 0x55, 0xD5};

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(uint8_t(v >> 8));
  out.push_back(uint8_t(v));
}

uint16_t get_u16(const uint8_t* p) { return uint16_t(p[0] << 8 | p[1]); }

}  // namespace

void Crc32::update(uint8_t byte) {
  state_ = (state_ >> 8) ^ crc_table()[(state_ ^ byte) & 0xFF];
}

void Crc32::update(std::span<const uint8_t> bytes) {
  for (uint8_t b : bytes) update(b);
}

uint32_t Crc32::compute(std::span<const uint8_t> bytes) {
  Crc32 crc;
  crc.update(bytes);
  return crc.value();
}

std::array<uint8_t, 4> Crc32::fcs_bytes() const {
  uint32_t v = value();
  return {uint8_t(v), uint8_t(v >> 8), uint8_t(v >> 16), uint8_t(v >> 24)};
}

const std::array<uint32_t, 256>& Crc32::table() { return crc_table(); }

uint16_t ipv4_checksum(std::span<const uint8_t> header) {
  if (header.size() % 2)
    throw Error("IPv4 checksum input must have even length");
  uint32_t sum = 0;
  for (size_t i = 0; i < header.size(); i += 2)
    sum += uint32_t(header[i] << 8 | header[i + 1]);
  while (sum >> 16) sum = (sum & 0xFFFF) + (sum >> 16);
  return uint16_t(~sum);
}

MacAddr MacAddr::parse(std::string_view text) {
  MacAddr out;
  unsigned b[6];
  if (std::sscanf(std::string(text).c_str(), "%x:%x:%x:%x:%x:%x", &b[0],
                  &b[1], &b[2], &b[3], &b[4], &b[5]) != 6)
    throw Error("bad MAC address: " + std::string(text));
  for (int i = 0; i < 6; ++i) {
    if (b[i] > 255) throw Error("bad MAC address: " + std::string(text));
    out.bytes[i] = uint8_t(b[i]);
  }
  return out;
}

std::string MacAddr::to_string() const {
  char buf[18];
  std::snprintf(buf, sizeof buf, "%02x:%02x:%02x:%02x:%02x:%02x", bytes[0],
                bytes[1], bytes[2], bytes[3], bytes[4], bytes[5]);
  return buf;
}

Ipv4Addr Ipv4Addr::parse(std::string_view text) {
  Ipv4Addr out;
  unsigned b[4];
  if (std::sscanf(std::string(text).c_str(), "%u.%u.%u.%u", &b[0], &b[1],
                  &b[2], &b[3]) != 4)
    throw Error("bad IPv4 address: " + std::string(text));
  for (int i = 0; i < 4; ++i) {
    if (b[i] > 255) throw Error("bad IPv4 address: " + std::string(text));
    out.bytes[i] = uint8_t(b[i]);
  }
  return out;
}

std::string Ipv4Addr::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%u.%u.%u.%u", bytes[0], bytes[1], bytes[2],
                bytes[3]);
  return buf;
}

std::vector<uint8_t> build_frame(const PacketMeta& meta,
                                 std::span<const uint8_t> data,
                                 const WireConfig& config) {
  if (data.size() > kMaxDataSize)
    throw Error("frame data exceeds " + std::to_string(kMaxDataSize) +
                " bytes");

  std::vector<uint8_t> out;
  out.reserve(kPreambleSize + kMaxFrameSize);
  if (config.include_preamble)
    out.insert(out.end(), kPreamble.begin(), kPreamble.end());
  size_t body_start = out.size();

  // Ethernet
  out.insert(out.end(), config.dst_mac.bytes.begin(),
             config.dst_mac.bytes.end());
  out.insert(out.end(), config.src_mac.bytes.begin(),
             config.src_mac.bytes.end());
  put_u16(out, kEtherTypeIpv4);

  // IPv4, checksum patched after the header is laid down
  size_t ip_start = out.size();
  uint16_t ip_total =
      uint16_t(kIpv4HeaderSize + kUdpHeaderSize + kPacketMetaSize +
               data.size());
  out.push_back(0x45);  // version 4, IHL 5
  out.push_back(0x00);
  put_u16(out, ip_total);
  put_u16(out, 0x0000);  // identification
  put_u16(out, 0x0000);  // flags + fragment offset
  out.push_back(config.ttl);
  out.push_back(kIpProtoUdp);
  put_u16(out, 0x0000);  // checksum placeholder
  out.insert(out.end(), config.src_ip.bytes.begin(),
             config.src_ip.bytes.end());
  out.insert(out.end(), config.dst_ip.bytes.begin(),
             config.dst_ip.bytes.end());
  uint16_t ck = ipv4_checksum(
      std::span(out).subspan(ip_start, kIpv4HeaderSize));
  out[ip_start + 10] = uint8_t(ck >> 8);
  out[ip_start + 11] = uint8_t(ck);

  // UDP, checksum optional and left zero
  put_u16(out, config.src_port);
  put_u16(out, config.dst_port);
  put_u16(out, uint16_t(kUdpHeaderSize + kPacketMetaSize + data.size()));
  put_u16(out, 0x0000);

  out.push_back(uint8_t(meta.kind));
  out.push_back(meta.seq);
  out.insert(out.end(), data.begin(), data.end());

  // Pad so the FCS-covered frame reaches the 64-byte minimum.
  size_t body_size = out.size() - body_start;
  if (body_size + kFcsSize < kMinFrameSize)
    out.resize(out.size() + (kMinFrameSize - kFcsSize - body_size), 0);

  uint32_t fcs = Crc32::compute(std::span(out).subspan(body_start));
  for (int i = 0; i < 4; ++i) out.push_back(uint8_t(fcs >> (8 * i)));
  return out;
}

ParseStatus parse_frame(std::span<const uint8_t> frame,
                        const WireConfig& config, ParsedFrame& out) {
  // Preamble is detected, never required: the same parser handles capture
  // frames (preamble on) and OS-delivered frames (preamble off).
  if (frame.size() >= kPreambleSize &&
      std::equal(kPreamble.begin(), kPreamble.end(), frame.begin()))
    frame = frame.subspan(kPreambleSize);

  if (frame.size() < kMinFrameSize || frame.size() > kMaxFrameSize)
    return ParseStatus::Malformed;

  // FCS comes first; a frame that fails it gets no further interpretation.
  std::span<const uint8_t> body = frame.first(frame.size() - kFcsSize);
  uint32_t stored = 0;
  for (int i = 0; i < 4; ++i)
    stored |= uint32_t(frame[frame.size() - 4 + i]) << (8 * i);
  if (Crc32::compute(body) != stored) return ParseStatus::BadFcs;

  if (get_u16(&body[12]) != kEtherTypeIpv4) return ParseStatus::NotOurs;

  const uint8_t* ip = &body[kEthernetHeaderSize];
  if (ip[0] != 0x45) return ParseStatus::Malformed;
  if (ip[9] != kIpProtoUdp) return ParseStatus::NotOurs;
  if (ipv4_checksum(std::span(ip, kIpv4HeaderSize)) != 0)
    return ParseStatus::Malformed;
  uint16_t ip_total = get_u16(ip + 2);

  const uint8_t* udp = ip + kIpv4HeaderSize;
  if (get_u16(udp + 2) != config.dst_port) return ParseStatus::NotOurs;
  uint16_t udp_len = get_u16(udp + 4);

  // Length consistency: headers + payload must fit the frame (padding may
  // follow) and the two length fields must agree.
  if (udp_len < kUdpHeaderSize + kPacketMetaSize) return ParseStatus::Malformed;
  if (ip_total != kIpv4HeaderSize + udp_len) return ParseStatus::Malformed;
  if (kEthernetHeaderSize + ip_total > body.size())
    return ParseStatus::Malformed;

  const uint8_t* payload = udp + kUdpHeaderSize;
  size_t data_len = udp_len - kUdpHeaderSize - kPacketMetaSize;
  if (payload[0] > 0x01) return ParseStatus::Malformed;

  out.meta.kind = PacketKind(payload[0]);
  out.meta.seq = payload[1];
  out.data.assign(payload + 2, payload + 2 + data_len);
  return ParseStatus::Ok;
}

std::string_view to_string(ParseStatus status) {
  switch (status) {
    case ParseStatus::Ok: return "ok";
    case ParseStatus::BadFcs: return "bad-fcs";
    case ParseStatus::NotOurs: return "not-ours";
    case ParseStatus::Malformed: return "malformed";
  }
  return "?";
}

bool dissect_frame(std::span<const uint8_t> frame, FrameFields& out) {
  out = FrameFields{};
  if (frame.size() >= kPreambleSize &&
      std::equal(kPreamble.begin(), kPreamble.end(), frame.begin())) {
    out.has_preamble = true;
    frame = frame.subspan(kPreambleSize);
  }
  out.frame_length = frame.size();
  if (frame.size() <
      kEthernetHeaderSize + kIpv4HeaderSize + kUdpHeaderSize +
          kPacketMetaSize + kFcsSize)
    return false;

  std::span<const uint8_t> body = frame.first(frame.size() - kFcsSize);
  for (int i = 0; i < 4; ++i)
    out.fcs_stored |= uint32_t(frame[frame.size() - 4 + i]) << (8 * i);
  out.fcs_computed = Crc32::compute(body);
  out.fcs_ok = out.fcs_stored == out.fcs_computed;

  std::copy_n(body.begin(), 6, out.dst_mac.bytes.begin());
  std::copy_n(body.begin() + 6, 6, out.src_mac.bytes.begin());
  out.ethertype = get_u16(&body[12]);

  const uint8_t* ip = &body[kEthernetHeaderSize];
  out.ip_version_ihl = ip[0];
  out.ip_total_length = get_u16(ip + 2);
  out.ttl = ip[8];
  out.protocol = ip[9];
  out.ip_checksum = get_u16(ip + 10);
  out.ip_checksum_ok = ipv4_checksum(std::span(ip, kIpv4HeaderSize)) == 0;
  std::copy_n(ip + 12, 4, out.src_ip.bytes.begin());
  std::copy_n(ip + 16, 4, out.dst_ip.bytes.begin());

  const uint8_t* udp = ip + kIpv4HeaderSize;
  out.src_port = get_u16(udp);
  out.dst_port = get_u16(udp + 2);
  out.udp_length = get_u16(udp + 4);

  const uint8_t* payload = udp + kUdpHeaderSize;
  out.kind = payload[0];
  out.seq = payload[1];
  out.data_length = out.udp_length >= kUdpHeaderSize + kPacketMetaSize
                        ? out.udp_length - kUdpHeaderSize - kPacketMetaSize
                        : 0;
  return true;
}

}  // namespace mjstream
