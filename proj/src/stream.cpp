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

#include "mjstream/stream.hpp"

#include <algorithm>

#include "mjstream/dct.hpp"

namespace mjstream {

CodecTables CodecTables::standard() {
  return CodecTables{
      QuantTable::standard(ChannelClass::Luma),
      QuantTable::standard(ChannelClass::Chroma),
      HuffmanTable::standard(TableClass::DcLuma),
      HuffmanTable::standard(TableClass::AcLuma),
      HuffmanTable::standard(TableClass::DcChroma),
      HuffmanTable::standard(TableClass::AcChroma),
  };
}

std::vector<uint8_t> VideoPayload::serialize() const {
  std::vector<uint8_t> out;
  out.reserve(1 + 4 * words.words.size());
  out.push_back(position);
  for (uint32_t w : words.words) {
    out.push_back(uint8_t(w >> 24));
    out.push_back(uint8_t(w >> 16));
    out.push_back(uint8_t(w >> 8));
    out.push_back(uint8_t(w));
  }
  return out;
}

VideoPayload VideoPayload::parse(std::span<const uint8_t> data) {
  if (data.empty() || (data.size() - 1) % 4)
    throw MalformedStreamError(
        "video payload must be a position byte plus whole words");
  VideoPayload out;
  out.position = data[0];
  size_t n = (data.size() - 1) / 4;
  out.words.words.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const uint8_t* p = &data[1 + 4 * i];
    out.words.words.push_back(uint32_t(p[0]) << 24 | uint32_t(p[1]) << 16 |
                              uint32_t(p[2]) << 8 | uint32_t(p[3]));
  }
  out.words.total_bits = out.words.words.size() * 32;
  return out;
}

EncodeResult encode_frame(const RgbFrame& frame, const CodecTables& tables,
                          uint8_t seq_start, bool rgb565) {
  YcbcrPlanes planes = prepare_frame(frame, rgb565);
  int positions =
      superblock_pair_count(planes.padded_width(), planes.padded_height());

  EncodeResult result;
  result.packets.reserve(size_t(positions));
  uint8_t seq = seq_start;
  WordStreamWriter writer;

  for (int pos = 0; pos < positions; ++pos) {
    SuperblockPair pair = extract_superblock_pair(planes, pos);
    for (const PixelBlock& block : pair.blocks) {
      DctCoeffBlock coeffs = dct_2d(block);
      if (coeffs.saturated) ++result.stats.saturated_blocks;
      QuantizedBlock q =
          quantize_zigzag(coeffs, tables.quant_for(block.channel));
      for (const CodedUnit& unit :
           encode_block(q, tables.dc_for(block.channel),
                        tables.ac_for(block.channel)))
        writer.append(unit);
    }
    VideoPayload payload{uint8_t(pos), writer.finish()};
    if (payload.words.words.size() > kMaxPayloadWords)
      throw Error("video payload exceeds the 300-word staging limit");

    Packet packet{{PacketKind::Video, seq}, payload.serialize()};
    seq = uint8_t(seq + 1);
    result.stats.payload_bytes += packet.data.size();
    result.stats.max_payload =
        std::max(result.stats.max_payload, packet.data.size());
    result.packets.push_back(std::move(packet));
  }

  result.stats.packets = positions;
  result.stats.mean_payload =
      double(result.stats.payload_bytes) / double(positions);
  result.stats.compression_ratio =
      (kRawPacketBits / 8.0) / result.stats.mean_payload;
  return result;
}

namespace {

// Decodes the 12 blocks of one payload. Throws MalformedStreamError on any
// bitstream problem; the caller turns that into a rejected packet.
std::array<PixelBlock, kBlocksPerPacket> decode_payload_blocks(
    const VideoPayload& payload, const CodecTables& tables) {
  static constexpr Channel kOrder[kBlocksPerSuperblock] = {
      Channel::Y, Channel::Y, Channel::Y,
      Channel::Y, Channel::Cb, Channel::Cr};
  BitReader reader(payload.words);
  std::array<PixelBlock, kBlocksPerPacket> out;
  for (int b = 0; b < kBlocksPerPacket; ++b) {
    Channel ch = kOrder[b % kBlocksPerSuperblock];
    QuantizedBlock q = decode_block(reader, ch, tables.dc_for(ch),
                                    tables.ac_for(ch));
    DctCoeffBlock coeffs =
        dequantize(inverse_zigzag(q.coeffs), tables.quant_for(ch), ch);
    out[b] = idct_2d(coeffs);
  }
  return out;
}

// Renders one superblock's six decoded blocks into 16x16 RGB pixels.
void render_superblock(const PixelBlock* blocks, uint8_t* rgb,
                       int row_stride_px) {
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) {
      const PixelBlock& yb = blocks[(y / 8) * 2 + (x / 8)];
      int ys = yb.samples[(y % 8) * 8 + (x % 8)] + 128;
      // Chroma upsampling: nearest neighbor, each chroma sample covers 2x2.
      int cb = blocks[4].samples[(y / 2) * 8 + (x / 2)] + 128;
      int cr = blocks[5].samples[(y / 2) * 8 + (x / 2)] + 128;
      uint8_t* px = rgb + (size_t(y) * row_stride_px + x) * 3;
      ycbcr_to_rgb(std::clamp(ys, 0, 255), std::clamp(cb, 0, 255),
                   std::clamp(cr, 0, 255), px[0], px[1], px[2]);
    }
  }
}

}  // namespace

FrameAssembly::FrameAssembly(int width, int height)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0)
    throw InvalidGeometryError("assembly geometry must be positive");
  padded_width_ = (width + kSuperblockSize - 1) / kSuperblockSize *
                  kSuperblockSize;
  padded_height_ = (height + kSuperblockSize - 1) / kSuperblockSize *
                   kSuperblockSize;
  positions_ = superblock_pair_count(padded_width_, padded_height_);
}

bool FrameAssembly::apply(const VideoPayload& payload,
                          const CodecTables& tables) {
  if (payload.position >= positions_) {
    ++rejected_;
    return false;
  }
  std::array<PixelBlock, kBlocksPerPacket> blocks;
  try {
    blocks = decode_payload_blocks(payload, tables);
  } catch (const MalformedStreamError&) {
    ++rejected_;
    return false;
  }
  // Tile layout: superblock A in columns 0..15, B in 16..31.
  std::array<uint8_t, 32 * 16 * 3> tile;
  render_superblock(&blocks[0], tile.data(), 32);
  render_superblock(&blocks[kBlocksPerSuperblock], tile.data() + 16 * 3, 32);
  tiles_[payload.position] = tile;  // latest packet for a position wins
  return true;
}

double FrameAssembly::completeness() const {
  return positions_ ? double(tiles_.size()) / double(positions_) : 0.0;
}

const std::array<uint8_t, 32 * 16 * 3>& FrameAssembly::tile(
    int position) const {
  auto it = tiles_.find(position);
  if (it == tiles_.end())
    throw Error("no tile decoded at position " + std::to_string(position));
  return it->second;
}

RgbFrame FrameAssembly::render() const {
  RgbFrame canvas = RgbFrame::solid(padded_width_, padded_height_, 128, 128,
                                    128);  // missing tiles stay mid-gray
  int per_row = padded_width_ / kSuperblockSize;
  for (const auto& [pos, tile] : tiles_) {
    for (int half = 0; half < 2; ++half) {
      int sb = pos * 2 + half;
      int sx = (sb % per_row) * kSuperblockSize;
      int sy = (sb / per_row) * kSuperblockSize;
      for (int y = 0; y < 16; ++y) {
        const uint8_t* src = tile.data() + (size_t(y) * 32 + half * 16) * 3;
        std::copy_n(src, 16 * 3, canvas.at(sx, sy + y));
      }
    }
  }
  if (padded_width_ == width_ && padded_height_ == height_) return canvas;
  RgbFrame out;
  out.width = width_;
  out.height = height_;
  out.pixels.resize(size_t(width_) * height_ * 3);
  for (int y = 0; y < height_; ++y)
    std::copy_n(canvas.at(0, y), size_t(width_) * 3, out.at(0, y));
  return out;
}

bool decode_packet(const VideoPayload& payload, FrameAssembly& assembly,
                   const CodecTables& tables) {
  return assembly.apply(payload, tables);
}

AudioPacketizeResult audio_packetize(std::span<const uint8_t> pcm) {
  AudioPacketizeResult out;
  size_t full = pcm.size() / kAudioChunkSize;
  out.chunks.reserve(full + 1);
  for (size_t i = 0; i < full; ++i) {
    const uint8_t* p = pcm.data() + i * kAudioChunkSize;
    out.chunks.emplace_back(p, p + kAudioChunkSize);
  }
  size_t rem = pcm.size() % kAudioChunkSize;
  if (rem) {
    std::vector<uint8_t> tail(pcm.end() - rem, pcm.end());
    tail.resize(kAudioChunkSize, 0);
    out.padded_bytes = kAudioChunkSize - rem;
    out.chunks.push_back(std::move(tail));
  }
  return out;
}

std::vector<std::vector<uint8_t>> AudioPacketizer::push(
    std::span<const uint8_t> pcm) {
  std::vector<std::vector<uint8_t>> out;
  size_t offset = 0;
  if (!pending_.empty()) {
    size_t need = kAudioChunkSize - pending_.size();
    size_t take = std::min(need, pcm.size());
    pending_.insert(pending_.end(), pcm.begin(), pcm.begin() + take);
    offset = take;
    if (pending_.size() == kAudioChunkSize) {
      out.push_back(std::move(pending_));
      pending_.clear();
    }
  }
  while (pcm.size() - offset >= kAudioChunkSize) {
    out.emplace_back(pcm.begin() + offset,
                     pcm.begin() + offset + kAudioChunkSize);
    offset += kAudioChunkSize;
  }
  pending_.insert(pending_.end(), pcm.begin() + offset, pcm.end());
  return out;
}

std::optional<std::vector<uint8_t>> AudioPacketizer::finish() {
  if (pending_.empty()) return std::nullopt;
  padded_ = kAudioChunkSize - pending_.size();
  pending_.resize(kAudioChunkSize, 0);
  std::vector<uint8_t> out = std::move(pending_);
  pending_.clear();
  return out;
}

std::vector<Packet> impair(std::vector<Packet> packets,
                           double drop_probability, int reorder_window,
                           uint64_t seed) {
  if (drop_probability < 0.0 || drop_probability > 1.0)
    throw Error("drop probability outside [0,1]");
  if (reorder_window < 0) throw Error("reorder window must be >= 0");

  std::mt19937_64 rng(seed);
  std::vector<Packet> kept;
  kept.reserve(packets.size());
  // Drop pass: threshold against a fixed-width integer draw rather than a
  // float distribution, so results are identical across standard libraries.
  const uint64_t threshold =
      uint64_t(drop_probability * double(uint64_t(1) << 53));
  for (Packet& p : packets) {
    uint64_t draw = rng() >> 11;  // 53 uniform bits
    if (draw >= threshold) kept.push_back(std::move(p));
  }
  // Reorder pass: forward windowed shuffle; element i swaps with a uniform
  // pick in [i, i + window), clipped to the tail. Displacement stays under
  // the window size.
  if (reorder_window > 1) {
    for (size_t i = 0; i < kept.size(); ++i) {
      size_t limit = std::min(kept.size() - i, size_t(reorder_window));
      size_t j = i + size_t(rng() % limit);
      std::swap(kept[i], kept[j]);
    }
  }
  return kept;
}

Reassembler::Reassembler(int width, int height, CodecTables tables)
    : width_(width),
      height_(height),
      tables_(std::move(tables)),
      assembly_(width, height) {}

void Reassembler::complete_frame() {
  stats_.dropped_positions +=
      size_t(assembly_.positions_total() - assembly_.positions_filled());
  ++stats_.frames_completed;
  done_.push_back(assembly_.render());
  assembly_ = FrameAssembly(width_, height_);
  max_position_seen_ = -1;
  frame_open_ = false;
}

void Reassembler::push(const PacketMeta& meta, std::span<const uint8_t> data) {
  ++stats_.packets;
  // Sequence accounting over the shared counter.
  if (!have_seq_) {
    have_seq_ = true;
    last_seq_ = meta.seq;
  } else {
    // Unwrap mod 256 with the smallest absolute step.
    int delta = int(int8_t(uint8_t(meta.seq - last_seq_)));
    if (delta < 0)
      ++stats_.out_of_order;
    else if (delta > 1)
      stats_.seq_gaps += size_t(delta - 1);
    unwrapped_seq_ += uint64_t(int64_t(delta));
    last_seq_ = meta.seq;
  }

  if (meta.kind == PacketKind::Audio) {
    ++stats_.audio_packets;
    audio_.emplace_back(unwrapped_seq_,
                        std::vector<uint8_t>(data.begin(), data.end()));
    return;
  }

  ++stats_.video_packets;
  stats_.video_payload_bytes += data.size();
  VideoPayload payload;
  try {
    payload = VideoPayload::parse(data);
  } catch (const MalformedStreamError&) {
    ++stats_.rejected;
    return;
  }

  // New frame when the position falls well below the running maximum;
  // a strict "lower than previous" rule would split frames on the mild
  // reordering this stream is designed to tolerate.
  if (frame_open_ &&
      int(payload.position) + kPositionRegressTolerance < max_position_seen_)
    complete_frame();

  if (assembly_.apply(payload, tables_)) {
    frame_open_ = true;
    max_position_seen_ = std::max(max_position_seen_, int(payload.position));
  } else {
    ++stats_.rejected;
  }
}

std::vector<RgbFrame> Reassembler::take_frames() {
  std::vector<RgbFrame> out = std::move(done_);
  done_.clear();
  return out;
}

void Reassembler::finish() {
  if (frame_open_) complete_frame();
}

std::vector<uint8_t> Reassembler::take_audio() {
  std::stable_sort(audio_.begin(), audio_.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<uint8_t> out;
  size_t total = 0;
  for (const auto& [seq, chunk] : audio_) total += chunk.size();
  out.reserve(total);
  for (const auto& [seq, chunk] : audio_)
    out.insert(out.end(), chunk.begin(), chunk.end());
  audio_.clear();
  return out;
}

ThroughputEstimate estimate_throughput(const CycleModel& model,
                                       double mean_payload_bytes,
                                       int packets_per_frame) {
  if (mean_payload_bytes <= 0.0)
    throw Error("mean payload must be positive");
  if (packets_per_frame <= 0)
    throw Error("packets per frame must be positive");
  ThroughputEstimate out;
  out.cycles_per_packet =
      double(model.blocks_per_packet) * model.per_block_cycles +
      model.header_cycles + mean_payload_bytes * model.cycles_per_data_byte;
  out.fps = double(model.clock_hz) /
            (out.cycles_per_packet * packets_per_frame);
  return out;
}

}  // namespace mjstream
