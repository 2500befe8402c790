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

#include "mjstream/frame.hpp"

#include <algorithm>
#include <cmath>

namespace mjstream {

namespace {

uint8_t clamp_byte(double v) {
  return uint8_t(std::clamp(std::lround(v), 0l, 255l));
}

void check_frame(const RgbFrame& frame) {
  if (!frame.valid())
    throw InvalidGeometryError("frame geometry/pixel size mismatch");
}

}  // namespace

RgbFrame RgbFrame::solid(int width, int height, uint8_t r, uint8_t g,
                         uint8_t b) {
  RgbFrame out;
  out.width = width;
  out.height = height;
  out.pixels.resize(size_t(width) * height * 3);
  for (size_t i = 0; i + 2 < out.pixels.size(); i += 3) {
    out.pixels[i] = r;
    out.pixels[i + 1] = g;
    out.pixels[i + 2] = b;
  }
  return out;
}

RgbFrame rgb565_emulate(const RgbFrame& frame) {
  check_frame(frame);
  RgbFrame out = frame;
  for (size_t i = 0; i < out.pixels.size(); i += 3) {
    // Keep 5/6/5 high bits, replicate them into the dropped low bits so
    // white stays white.
    uint8_t r = out.pixels[i] & 0xF8;
    uint8_t g = out.pixels[i + 1] & 0xFC;
    uint8_t b = out.pixels[i + 2] & 0xF8;
    out.pixels[i] = r | (r >> 5);
    out.pixels[i + 1] = g | (g >> 6);
    out.pixels[i + 2] = b | (b >> 5);
  }
  return out;
}

YcbcrImage rgb_to_ycbcr(const RgbFrame& frame) {
  check_frame(frame);
  YcbcrImage out;
  for (BytePlane* p : {&out.y, &out.cb, &out.cr}) {
    p->width = frame.width;
    p->height = frame.height;
    p->samples.resize(size_t(frame.width) * frame.height);
  }
  const uint8_t* px = frame.pixels.data();
  for (size_t i = 0, n = out.y.samples.size(); i < n; ++i, px += 3) {
    double r = px[0], g = px[1], b = px[2];
    out.y.samples[i] = clamp_byte(0.299 * r + 0.587 * g + 0.114 * b);
    out.cb.samples[i] =
        clamp_byte(128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b);
    out.cr.samples[i] =
        clamp_byte(128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b);
  }
  return out;
}

void ycbcr_to_rgb(int y, int cb, int cr, uint8_t& r, uint8_t& g, uint8_t& b) {
  double yd = y, cbd = cb - 128.0, crd = cr - 128.0;
  r = clamp_byte(yd + 1.402 * crd);
  g = clamp_byte(yd - 0.344136 * cbd - 0.714136 * crd);
  b = clamp_byte(yd + 1.772 * cbd);
}

BytePlane pad_plane(const BytePlane& plane, int multiple) {
  if (plane.width <= 0 || plane.height <= 0 || multiple <= 0)
    throw InvalidGeometryError("cannot pad an empty plane");
  int pw = (plane.width + multiple - 1) / multiple * multiple;
  int ph = (plane.height + multiple - 1) / multiple * multiple;
  if (pw == plane.width && ph == plane.height) return plane;
  BytePlane out;
  out.width = pw;
  out.height = ph;
  out.samples.assign(size_t(pw) * ph, 0);  // pad value: black
  for (int y = 0; y < plane.height; ++y)
    std::copy_n(&plane.samples[size_t(y) * plane.width], plane.width,
                &out.samples[size_t(y) * pw]);
  return out;
}

BytePlane subsample_half(const BytePlane& plane) {
  if (plane.width % 2 || plane.height % 2)
    throw InvalidGeometryError("subsampling needs even plane dimensions");
  BytePlane out;
  out.width = plane.width / 2;
  out.height = plane.height / 2;
  out.samples.resize(size_t(out.width) * out.height);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      int sum = plane.at(2 * x, 2 * y) + plane.at(2 * x + 1, 2 * y) +
                plane.at(2 * x, 2 * y + 1) + plane.at(2 * x + 1, 2 * y + 1);
      out.at(x, y) = uint8_t((sum + 2) / 4);
    }
  }
  return out;
}

SamplePlane level_shift(const BytePlane& plane) {
  SamplePlane out;
  out.width = plane.width;
  out.height = plane.height;
  out.samples.resize(plane.samples.size());
  for (size_t i = 0; i < plane.samples.size(); ++i)
    out.samples[i] = int16_t(plane.samples[i] - 128);
  return out;
}

BytePlane level_unshift(const SamplePlane& plane) {
  BytePlane out;
  out.width = plane.width;
  out.height = plane.height;
  out.samples.resize(plane.samples.size());
  for (size_t i = 0; i < plane.samples.size(); ++i)
    out.samples[i] =
        uint8_t(std::clamp(plane.samples[i] + 128, 0, 255));
  return out;
}

int superblock_pair_count(int padded_width, int padded_height) {
  if (padded_width <= 0 || padded_height <= 0 ||
      padded_width % kSuperblockSize || padded_height % kSuperblockSize)
    throw InvalidGeometryError("padded geometry must be a 16x16 grid");
  int superblocks =
      (padded_width / kSuperblockSize) * (padded_height / kSuperblockSize);
  if (superblocks % 2)
    throw InvalidGeometryError(
        "superblock count is odd; packets carry exactly two");
  int pairs = superblocks / 2;
  if (pairs > kMaxPairPositions)
    throw InvalidGeometryError(
        "too many superblock pairs for the 1-byte position field");
  return pairs;
}

YcbcrPlanes prepare_frame(const RgbFrame& frame, bool rgb565) {
  check_frame(frame);
  YcbcrImage full =
      rgb_to_ycbcr(rgb565 ? rgb565_emulate(frame) : frame);
  // Pad in the unsigned domain (black), then subsample, then level shift;
  // padded samples therefore sit at -128 when they reach the transform.
  BytePlane y = pad_plane(full.y, kSuperblockSize);
  BytePlane cb = subsample_half(pad_plane(full.cb, kSuperblockSize));
  BytePlane cr = subsample_half(pad_plane(full.cr, kSuperblockSize));

  YcbcrPlanes out;
  out.y = level_shift(y);
  out.cb = level_shift(cb);
  out.cr = level_shift(cr);
  out.original_width = frame.width;
  out.original_height = frame.height;
  superblock_pair_count(out.padded_width(), out.padded_height());
  return out;
}

namespace {

PixelBlock cut_block(const SamplePlane& plane, int x0, int y0,
                     Channel channel) {
  PixelBlock out;
  out.channel = channel;
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x)
      out.samples[y * 8 + x] = plane.at(x0 + x, y0 + y);
  return out;
}

}  // namespace

SuperblockPair extract_superblock_pair(const YcbcrPlanes& planes,
                                       int position) {
  int pairs = superblock_pair_count(planes.padded_width(),
                                    planes.padded_height());
  if (position < 0 || position >= pairs)
    throw InvalidGeometryError("superblock pair position out of range");

  int per_row = planes.padded_width() / kSuperblockSize;
  SuperblockPair out;
  out.position = position;
  for (int half = 0; half < 2; ++half) {
    int sb = position * 2 + half;
    int sx = (sb % per_row) * kSuperblockSize;
    int sy = (sb / per_row) * kSuperblockSize;
    PixelBlock* dst = &out.blocks[half * kBlocksPerSuperblock];
    // Four luma blocks in raster order within the 16x16 region.
    dst[0] = cut_block(planes.y, sx, sy, Channel::Y);
    dst[1] = cut_block(planes.y, sx + 8, sy, Channel::Y);
    dst[2] = cut_block(planes.y, sx, sy + 8, Channel::Y);
    dst[3] = cut_block(planes.y, sx + 8, sy + 8, Channel::Y);
    dst[4] = cut_block(planes.cb, sx / 2, sy / 2, Channel::Cb);
    dst[5] = cut_block(planes.cr, sx / 2, sy / 2, Channel::Cr);
  }
  return out;
}

}  // namespace mjstream
