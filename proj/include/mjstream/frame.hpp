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

// Frame preparation: color conversion, padding, 4:2:0 subsampling, level
// shift, and the superblock layout that the packetizer walks.
//
// A superblock is a 16x16 luma region plus its two co-sited 8x8 chroma
// blocks. Superblocks are indexed in raster order over the padded frame and
// paired (even index, odd index); one packet carries one pair.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mjstream/error.hpp"

namespace mjstream {

enum class Channel : uint8_t { Y = 0, Cb = 1, Cr = 2 };

enum class ChannelClass : uint8_t { Luma = 0, Chroma = 1 };

constexpr ChannelClass class_of(Channel c) {
  return c == Channel::Y ? ChannelClass::Luma : ChannelClass::Chroma;
}

// Interleaved 8-bit RGB image, row-major, 3 bytes per pixel.
struct RgbFrame {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;

  static RgbFrame solid(int width, int height, uint8_t r, uint8_t g,
                        uint8_t b);
  bool valid() const {
    return width > 0 && height > 0 &&
           pixels.size() == static_cast<size_t>(width) * height * 3;
  }
  uint8_t* at(int x, int y) { return pixels.data() + (size_t(y) * width + x) * 3; }
  const uint8_t* at(int x, int y) const {
    return pixels.data() + (size_t(y) * width + x) * 3;
  }
};

// Single-channel plane of unsigned samples in [0, 255].
struct BytePlane {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> samples;

  uint8_t at(int x, int y) const { return samples[size_t(y) * width + x]; }
  uint8_t& at(int x, int y) { return samples[size_t(y) * width + x]; }
};

// Single-channel plane of level-shifted samples in [-128, 127].
struct SamplePlane {
  int width = 0;
  int height = 0;
  std::vector<int16_t> samples;

  int16_t at(int x, int y) const { return samples[size_t(y) * width + x]; }
  int16_t& at(int x, int y) { return samples[size_t(y) * width + x]; }
};

// Full-resolution converted planes before subsampling.
struct YcbcrImage {
  BytePlane y;
  BytePlane cb;
  BytePlane cr;
};

// Encoder-ready planes: padded, 4:2:0 subsampled, level-shifted. The
// original geometry is kept so the decoder can crop padding back off.
struct YcbcrPlanes {
  SamplePlane y;
  SamplePlane cb;  // half width, half height of y
  SamplePlane cr;
  int original_width = 0;
  int original_height = 0;

  int padded_width() const { return y.width; }
  int padded_height() const { return y.height; }
};

// One 8x8 block of level-shifted samples, raster order.
struct PixelBlock {
  std::array<int16_t, 64> samples{};
  Channel channel = Channel::Y;
};

// Blocks per superblock in coding order: four luma (top-left, top-right,
// bottom-left, bottom-right), then Cb, then Cr.
inline constexpr int kBlocksPerSuperblock = 6;

// Two adjacent superblocks; the unit one video packet carries. Block order
// is superblock A's six blocks then superblock B's six.
struct SuperblockPair {
  int position = 0;
  std::array<PixelBlock, 2 * kBlocksPerSuperblock> blocks;
};

inline constexpr int kSuperblockSize = 16;
// The packet position field is one byte.
inline constexpr int kMaxPairPositions = 256;

// Emulates a 16-bit RGB565 capture path: masks each channel to its 565
// precision and replicates high bits into the low ones.
RgbFrame rgb565_emulate(const RgbFrame& frame);

// Full-range BT.601 conversion, rounded to nearest, clamped to [0, 255].
YcbcrImage rgb_to_ycbcr(const RgbFrame& frame);

// Converts one YCbCr sample (all in [0, 255]) back to RGB.
void ycbcr_to_rgb(int y, int cb, int cr, uint8_t& r, uint8_t& g, uint8_t& b);

// Pads right/bottom edges with 0 (black) up to the next multiple.
BytePlane pad_plane(const BytePlane& plane, int multiple);

// 2x2 box filter, rounded to nearest. Plane dimensions must be even.
BytePlane subsample_half(const BytePlane& plane);

SamplePlane level_shift(const BytePlane& plane);
BytePlane level_unshift(const SamplePlane& plane);

// Runs the whole preparation pipeline. With rgb565 set the input is first
// reduced to RGB565 precision. Throws InvalidGeometryError for geometries
// the packet format cannot carry.
YcbcrPlanes prepare_frame(const RgbFrame& frame, bool rgb565 = false);

// Number of superblock pairs for a padded geometry. Throws
// InvalidGeometryError if the superblock count is odd or there are more
// pairs than positions representable in one byte.
int superblock_pair_count(int padded_width, int padded_height);

// Extracts pair `position` (raster order over superblocks). Position must be
// in [0, superblock_pair_count).
SuperblockPair extract_superblock_pair(const YcbcrPlanes& planes,
                                       int position);

}  // namespace mjstream
