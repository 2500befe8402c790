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

#include <doctest.h>

#include <cstdlib>

#include "mjstream/frame.hpp"

using namespace mjstream;

TEST_CASE("color conversion hits the standard anchor points") {
  YcbcrImage img = rgb_to_ycbcr(RgbFrame::solid(2, 2, 255, 255, 255));
  CHECK(img.y.samples[0] == 255);
  CHECK(img.cb.samples[0] == 128);
  CHECK(img.cr.samples[0] == 128);

  img = rgb_to_ycbcr(RgbFrame::solid(2, 2, 0, 0, 0));
  CHECK(img.y.samples[0] == 0);
  CHECK(img.cb.samples[0] == 128);
  CHECK(img.cr.samples[0] == 128);

  img = rgb_to_ycbcr(RgbFrame::solid(2, 2, 255, 0, 0));
  CHECK(img.y.samples[0] == 76);    // 0.299 * 255
  CHECK(img.cb.samples[0] == 85);   // 128 - 0.168736 * 255
  CHECK(img.cr.samples[0] == 255);  // 128 + 0.5 * 255

  img = rgb_to_ycbcr(RgbFrame::solid(2, 2, 0, 0, 255));
  CHECK(img.y.samples[0] == 29);
  CHECK(img.cb.samples[0] == 255);
  CHECK(img.cr.samples[0] == 107);  // 128 - 0.081312 * 255
}

TEST_CASE("color conversion round-trips within rounding error") {
  for (int r = 0; r < 256; r += 17)
    for (int g = 0; g < 256; g += 17)
      for (int b = 0; b < 256; b += 17) {
        YcbcrImage img =
            rgb_to_ycbcr(RgbFrame::solid(2, 2, uint8_t(r), uint8_t(g),
                                         uint8_t(b)));
        uint8_t rr, gg, bb;
        ycbcr_to_rgb(img.y.samples[0], img.cb.samples[0], img.cr.samples[0],
                     rr, gg, bb);
        CHECK(std::abs(rr - r) <= 2);
        CHECK(std::abs(gg - g) <= 2);
        CHECK(std::abs(bb - b) <= 2);
      }
}

TEST_CASE("rgb565 emulation masks low bits and replicates high ones") {
  RgbFrame f = RgbFrame::solid(1, 1, 0xFF, 0xFF, 0xFF);
  RgbFrame out = rgb565_emulate(f);
  CHECK(out.pixels[0] == 0xFF);  // white survives
  CHECK(out.pixels[1] == 0xFF);
  CHECK(out.pixels[2] == 0xFF);

  f = RgbFrame::solid(1, 1, 0x07, 0x03, 0x07);
  out = rgb565_emulate(f);
  CHECK(out.pixels[0] == 0);  // below 565 precision collapses to zero
  CHECK(out.pixels[1] == 0);
  CHECK(out.pixels[2] == 0);

  f = RgbFrame::solid(1, 1, 0x08, 0x04, 0x08);
  out = rgb565_emulate(f);
  CHECK(out.pixels[0] == 0x08);
  CHECK(out.pixels[1] == 0x04);
  CHECK(out.pixels[2] == 0x08);
}

TEST_CASE("padding extends to the block grid with black") {
  BytePlane p;
  p.width = 20;
  p.height = 10;
  p.samples.assign(200, 200);
  BytePlane padded = pad_plane(p, 16);
  CHECK(padded.width == 32);
  CHECK(padded.height == 16);
  CHECK(padded.at(5, 5) == 200);
  CHECK(padded.at(25, 5) == 0);
  CHECK(padded.at(5, 12) == 0);

  // Already aligned: untouched.
  BytePlane q;
  q.width = 16;
  q.height = 16;
  q.samples.assign(256, 9);
  BytePlane same = pad_plane(q, 16);
  CHECK(same.width == 16);
  CHECK(same.samples == q.samples);
}

TEST_CASE("2x2 subsampling averages with rounding") {
  BytePlane p;
  p.width = 4;
  p.height = 2;
  p.samples = {10, 20, 0, 1, 30, 40, 0, 0};
  BytePlane half = subsample_half(p);
  CHECK(half.width == 2);
  CHECK(half.height == 1);
  CHECK(half.at(0, 0) == 25);  // (10+20+30+40+2)/4
  CHECK(half.at(1, 0) == 0);   // (0+1+0+0+2)/4 rounds down to 0

  BytePlane odd;
  odd.width = 3;
  odd.height = 2;
  odd.samples.assign(6, 0);
  CHECK_THROWS_AS(subsample_half(odd), InvalidGeometryError);
}

TEST_CASE("level shift centers bytes on zero and unshift inverts it") {
  BytePlane p;
  p.width = 2;
  p.height = 1;
  p.samples = {0, 255};
  SamplePlane s = level_shift(p);
  CHECK(s.samples[0] == -128);
  CHECK(s.samples[1] == 127);
  BytePlane back = level_unshift(s);
  CHECK(back.samples == p.samples);
}

TEST_CASE("default geometry prepares 120 superblock pairs") {
  RgbFrame frame = RgbFrame::solid(320, 180, 10, 20, 30);
  YcbcrPlanes planes = prepare_frame(frame);
  CHECK(planes.padded_width() == 320);
  CHECK(planes.padded_height() == 192);
  CHECK(planes.cb.width == 160);
  CHECK(planes.cb.height == 96);
  CHECK(planes.original_width == 320);
  CHECK(planes.original_height == 180);
  CHECK(superblock_pair_count(320, 192) == 120);
}

TEST_CASE("padded rows level-shift to -128") {
  RgbFrame frame = RgbFrame::solid(320, 180, 200, 200, 200);
  YcbcrPlanes planes = prepare_frame(frame);
  // Rows 180..191 are padding.
  CHECK(planes.y.at(0, 185) == -128);
  CHECK(planes.y.at(319, 191) == -128);
  CHECK(planes.y.at(0, 0) != -128);
}

TEST_CASE("geometries that break the packet layout are rejected") {
  // 48x16 pads to 3 superblocks: odd count.
  CHECK_THROWS_AS(superblock_pair_count(48, 16), InvalidGeometryError);
  // Unaligned input to the counter itself.
  CHECK_THROWS_AS(superblock_pair_count(20, 16), InvalidGeometryError);
  // More than 256 pairs: 1024x512 = 64*32 = 2048 superblocks = 1024 pairs.
  CHECK_THROWS_AS(superblock_pair_count(1024, 512), InvalidGeometryError);
  // Same rules through prepare_frame.
  CHECK_THROWS_AS(prepare_frame(RgbFrame::solid(33, 16, 0, 0, 0)),
                  InvalidGeometryError);
  // Empty frame.
  CHECK_THROWS_AS(prepare_frame(RgbFrame{}), InvalidGeometryError);
}

TEST_CASE("superblock pairs cut the expected windows in coding order") {
  // Distinct values per region let the cut positions be asserted exactly.
  RgbFrame frame = RgbFrame::solid(64, 32, 0, 0, 0);
  // Mark pixel (16,0) region (second superblock) with a bright patch.
  for (int y = 0; y < 16; ++y)
    for (int x = 16; x < 32; ++x) {
      uint8_t* px = frame.at(x, y);
      px[0] = px[1] = px[2] = 255;
    }
  YcbcrPlanes planes = prepare_frame(frame);
  CHECK(superblock_pair_count(64, 32) == 4);

  SuperblockPair pair0 = extract_superblock_pair(planes, 0);
  CHECK(pair0.position == 0);
  CHECK(pair0.blocks.size() == 12);
  // Block order within a superblock: Y TL, Y TR, Y BL, Y BR, Cb, Cr.
  CHECK(pair0.blocks[0].channel == Channel::Y);
  CHECK(pair0.blocks[4].channel == Channel::Cb);
  CHECK(pair0.blocks[5].channel == Channel::Cr);
  // Superblock A is dark; B is the bright patch.
  CHECK(pair0.blocks[0].samples[0] == -128);
  CHECK(pair0.blocks[6].samples[0] == 127);  // first Y block of B

  // Pair 1 covers superblocks 2 and 3 (columns 32.. and 48..): dark again.
  SuperblockPair pair1 = extract_superblock_pair(planes, 1);
  CHECK(pair1.blocks[0].samples[0] == -128);

  CHECK_THROWS_AS(extract_superblock_pair(planes, 4), InvalidGeometryError);
  CHECK_THROWS_AS(extract_superblock_pair(planes, -1), InvalidGeometryError);
}

TEST_CASE("second row of superblocks maps to the right pixels") {
  RgbFrame frame = RgbFrame::solid(32, 32, 0, 0, 0);
  // Bright bottom half.
  for (int y = 16; y < 32; ++y)
    for (int x = 0; x < 32; ++x) {
      uint8_t* px = frame.at(x, y);
      px[0] = px[1] = px[2] = 255;
    }
  YcbcrPlanes planes = prepare_frame(frame);
  // 4 superblocks, 2 pairs; pair 1 = bottom row.
  SuperblockPair bottom = extract_superblock_pair(planes, 1);
  CHECK(bottom.blocks[0].samples[0] == 127);
  SuperblockPair top = extract_superblock_pair(planes, 0);
  CHECK(top.blocks[0].samples[0] == -128);
}
