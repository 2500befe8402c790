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

// Stream orchestration: frames to packets, packets back to frames, audio
// chunking, impairment simulation, and the cycle-cost throughput model.

#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "mjstream/entropy.hpp"
#include "mjstream/frame.hpp"
#include "mjstream/wire.hpp"

namespace mjstream {

inline constexpr int kBlocksPerPacket = 2 * kBlocksPerSuperblock;  // 12
// Hardware-modeled payload staging limit: 300 32-bit words.
inline constexpr size_t kMaxPayloadWords = 300;
inline constexpr size_t kAudioChunkSize = 800;
// Raw cost of one packet's coefficients before entropy coding: 12 blocks of
// 64 coefficients at 11 bits. Compression ratios are quoted against this.
inline constexpr double kRawPacketBits = 12.0 * 64.0 * 11.0;

// The four Huffman tables and two quantization tables one stream uses.
struct CodecTables {
  QuantTable quant_luma;
  QuantTable quant_chroma;
  HuffmanTable dc_luma;
  HuffmanTable ac_luma;
  HuffmanTable dc_chroma;
  HuffmanTable ac_chroma;

  static CodecTables standard();

  const QuantTable& quant_for(Channel c) const {
    return class_of(c) == ChannelClass::Luma ? quant_luma : quant_chroma;
  }
  const HuffmanTable& dc_for(Channel c) const {
    return class_of(c) == ChannelClass::Luma ? dc_luma : dc_chroma;
  }
  const HuffmanTable& ac_for(Channel c) const {
    return class_of(c) == ChannelClass::Luma ? ac_luma : ac_chroma;
  }
};

// Payload of one video packet: position byte, then the word stream
// big-endian word by word. Serialized size = 1 + 4 * word count.
struct VideoPayload {
  uint8_t position = 0;
  WordStream words;

  std::vector<uint8_t> serialize() const;
  // Throws MalformedStreamError on empty or misaligned input.
  static VideoPayload parse(std::span<const uint8_t> data);
};

// A packet before framing: metadata plus serialized payload bytes.
struct Packet {
  PacketMeta meta;
  std::vector<uint8_t> data;
};

struct FrameEncodeStats {
  int packets = 0;
  size_t payload_bytes = 0;  // serialized payloads, position byte included
  double mean_payload = 0.0;
  // kRawPacketBits/8 over the mean payload.
  double compression_ratio = 0.0;
  int saturated_blocks = 0;
  size_t max_payload = 0;
};

struct EncodeResult {
  std::vector<Packet> packets;
  FrameEncodeStats stats;
};

// Encodes one frame into one video packet per superblock pair. Sequence
// numbers start at seq_start and increment modulo 256 per packet.
EncodeResult encode_frame(const RgbFrame& frame, const CodecTables& tables,
                          uint8_t seq_start, bool rgb565 = false);

// Receiver-side store for one frame: decoded superblock pairs keyed by
// position. Latest packet for a position wins. Never throws on bad packet
// data; failures are counted instead.
class FrameAssembly {
 public:
  FrameAssembly(int width, int height);  // original (uncropped) geometry

  // Decodes the payload and stores its two superblocks. Returns false (and
  // counts) when the position is out of range or the bitstream is bad.
  bool apply(const VideoPayload& payload, const CodecTables& tables);

  // Fraction of positions filled, in [0, 1].
  double completeness() const;
  int positions_filled() const { return int(tiles_.size()); }
  int positions_total() const { return positions_; }
  int rejected_packets() const { return rejected_; }
  bool has_position(int position) const { return tiles_.count(position) > 0; }

  // Missing positions render mid-gray; padding is cropped off.
  RgbFrame render() const;

  // Raw decoded pixels of one pair: 32x16 RGB (pair laid out left/right).
  // Position must be present.
  const std::array<uint8_t, 32 * 16 * 3>& tile(int position) const;

  int width() const { return width_; }
  int height() const { return height_; }

 private:
  int width_, height_;
  int padded_width_, padded_height_;
  int positions_;
  std::map<int, std::array<uint8_t, 32 * 16 * 3>> tiles_;
  int rejected_ = 0;
};

// Free-function form of FrameAssembly::apply for callers that keep the
// assembly elsewhere.
bool decode_packet(const VideoPayload& payload, FrameAssembly& assembly,
                   const CodecTables& tables);

// Splits PCM into exactly-800-byte chunks. The final short chunk, if any,
// is zero-padded and the pad size reported.
struct AudioPacketizeResult {
  std::vector<std::vector<uint8_t>> chunks;
  size_t padded_bytes = 0;
};
AudioPacketizeResult audio_packetize(std::span<const uint8_t> pcm);

// Incremental variant for long streams: push() hands back every full chunk,
// finish() pads and returns the final partial chunk if one is pending.
class AudioPacketizer {
 public:
  std::vector<std::vector<uint8_t>> push(std::span<const uint8_t> pcm);
  std::optional<std::vector<uint8_t>> finish();
  size_t padded_bytes() const { return padded_; }

 private:
  std::vector<uint8_t> pending_;
  size_t padded_ = 0;
};

// Deterministic impairment: drops each packet independently with
// drop_probability, then walks the survivors swapping each with a uniform
// pick less than reorder_window ahead. Every single swap displaces by less
// than the window; chained swaps can drift an element further, with
// geometrically vanishing probability. Same seed, same output.
std::vector<Packet> impair(std::vector<Packet> packets,
                           double drop_probability, int reorder_window,
                           uint64_t seed);

struct StreamStats {
  size_t packets = 0;
  size_t video_packets = 0;
  size_t audio_packets = 0;
  size_t rejected = 0;       // undecodable video payloads
  size_t out_of_order = 0;   // sequence regressions on arrival
  size_t seq_gaps = 0;       // missing sequence numbers (sum of gap sizes)
  size_t video_payload_bytes = 0;
  int frames_completed = 0;
  size_t dropped_positions = 0;  // unfilled positions over completed frames

  double mean_video_payload() const {
    return video_packets ? double(video_payload_bytes) / double(video_packets)
                         : 0.0;
  }
  double compression_ratio() const {
    double m = mean_video_payload();
    return m > 0 ? (kRawPacketBits / 8.0) / m : 0.0;
  }
};

// Routes parsed packets to frame assemblies and the audio stream.
//
// Frame boundaries: positions grow within a frame, so a new frame starts
// when an incoming position falls well below the running maximum (more than
// kPositionRegressTolerance under it). Plain "position decreased" would
// misfire on mildly reordered streams, which are expected here.
class Reassembler {
 public:
  static constexpr int kPositionRegressTolerance = 32;

  Reassembler(int width, int height, CodecTables tables);

  void push(const PacketMeta& meta, std::span<const uint8_t> data);

  // Frames completed so far (boundary-detected); drains the internal list.
  std::vector<RgbFrame> take_frames();
  // Closes the in-progress frame, if any, and appends it to the take_frames
  // list. Call once at end of stream.
  void finish();

  // Audio bytes in sequence order; drains. Chunks arriving out of order are
  // reordered by their unwrapped sequence number.
  std::vector<uint8_t> take_audio();

  const StreamStats& stats() const { return stats_; }
  const FrameAssembly& current_assembly() const { return assembly_; }

 private:
  void complete_frame();
  int width_, height_;
  CodecTables tables_;
  FrameAssembly assembly_;
  int max_position_seen_ = -1;
  bool frame_open_ = false;
  std::vector<RgbFrame> done_;
  std::vector<std::pair<uint64_t, std::vector<uint8_t>>> audio_;
  bool have_seq_ = false;
  uint8_t last_seq_ = 0;
  // Starts high so a backward step on the very first packets cannot wrap
  // below zero.
  uint64_t unwrapped_seq_ = uint64_t(1) << 32;
  StreamStats stats_;
};

// Cycle-cost model of the hardware encode path. Per-stage figures are kept
// for reporting; the per-packet estimate uses the aggregated block cost.
struct CycleModel {
  int dct_cycles = 150;
  int quant_zigzag_cycles = 70;
  int rle_cycles_min = 20;
  int rle_cycles_max = 30;
  int blocks_per_packet = 12;
  int per_block_cycles = 240;
  int header_cycles = 384;
  int cycles_per_data_byte = 8;
  long clock_hz = 100'000'000;
};

struct ThroughputEstimate {
  double cycles_per_packet = 0.0;
  double fps = 0.0;
};

// cycles = blocks * per_block + header + payload_bytes * per_byte;
// fps = clock / (cycles * packets_per_frame).
ThroughputEstimate estimate_throughput(const CycleModel& model,
                                       double mean_payload_bytes,
                                       int packets_per_frame = 120);

// Single-producer single-consumer bounded queue used by the live send and
// receive paths. push blocks when full (back-pressure), pop blocks when
// empty, close() releases both sides.
template <typename T>
class BoundedQueue {
 public:
  explicit BoundedQueue(size_t capacity) : capacity_(capacity) {}

  // Returns false when the queue was closed before the item went in.
  bool push(T item) {
    std::unique_lock lk(mu_);
    not_full_.wait(lk, [&] { return items_.size() < capacity_ || closed_; });
    if (closed_) return false;
    items_.push_back(std::move(item));
    not_empty_.notify_one();
    return true;
  }

  // Empty result means closed and drained.
  std::optional<T> pop() {
    std::unique_lock lk(mu_);
    not_empty_.wait(lk, [&] { return !items_.empty() || closed_; });
    if (items_.empty()) return std::nullopt;
    T item = std::move(items_.front());
    items_.pop_front();
    not_full_.notify_one();
    return item;
  }

  void close() {
    std::lock_guard lk(mu_);
    closed_ = true;
    not_full_.notify_all();
    not_empty_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable not_full_, not_empty_;
  std::deque<T> items_;
  size_t capacity_;
  bool closed_ = false;
};

}  // namespace mjstream
