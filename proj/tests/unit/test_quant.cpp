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
#include <random>
#include <sstream>

#include "mjstream/quant.hpp"
#include "oracles.hpp"

using namespace mjstream;

TEST_CASE("zigzag order matches the frozen scan table") {
  for (int i = 0; i < 64; ++i) {
    CHECK(kZigzagOrder[i] == oracles::kZigzag[i]);
    CHECK(kRasterToZigzag[kZigzagOrder[i]] == i);
  }
}

TEST_CASE("zigzag scan and inverse are inverses") {
  std::array<int16_t, 64> raster;
  for (int i = 0; i < 64; ++i) raster[i] = int16_t(i * 3 - 50);
  auto zz = zigzag_scan(raster);
  CHECK(zz[0] == raster[0]);
  CHECK(zz[1] == raster[1]);
  CHECK(zz[2] == raster[8]);
  CHECK(inverse_zigzag(zz) == raster);
}

TEST_CASE("quantizer reproduces frozen known answers") {
  for (const auto& kat : oracles::kQuantKats) {
    std::array<uint8_t, 64> divisors;
    divisors.fill(kat.divisor);
    QuantTable t = QuantTable::from_divisors(divisors, ChannelClass::Luma);
    CHECK(t.quantize_at(0, kat.input) == kat.expected);
  }
}

TEST_CASE("standard tables expose the expected divisors") {
  const QuantTable& luma = QuantTable::standard(ChannelClass::Luma);
  const QuantTable& chroma = QuantTable::standard(ChannelClass::Chroma);
  CHECK(luma.divisors()[0] == 16);
  CHECK(luma.divisors()[1] == 11);
  CHECK(luma.divisors()[63] == 99);
  CHECK(chroma.divisors()[0] == 17);
  CHECK(chroma.divisors()[63] == 99);
  CHECK(luma.channel_class() == ChannelClass::Luma);
}

TEST_CASE("reciprocals equal exact rounded division over the full range") {
  // Spot the equivalence here on a sampled range; the acceptance suite
  // runs the exhaustive sweep over both standard tables.
  std::array<uint8_t, 64> divisors;
  for (int i = 0; i < 64; ++i) divisors[i] = uint8_t(1 + (i * 4) % 255);
  QuantTable t = QuantTable::from_divisors(divisors, ChannelClass::Luma);
  for (int i = 0; i < 64; ++i) {
    int q = t.divisors()[i];
    for (int32_t v = -2048; v <= 2047; v += 7) {
      int32_t mag = (std::abs(v) + q / 2) / q;
      int32_t expect = v < 0 ? -mag : mag;
      expect = std::clamp(expect, -1024, 1023);
      CHECK(t.quantize_at(i, v) == expect);
    }
  }
}

TEST_CASE("quantizer clamps its input and output") {
  std::array<uint8_t, 64> ones;
  ones.fill(1);
  QuantTable t = QuantTable::from_divisors(ones, ChannelClass::Luma);
  CHECK(t.quantize_at(0, 4000) == 1023);    // input clamped to 2047, then cap
  CHECK(t.quantize_at(0, -4000) == -1024);
  CHECK(t.quantize_at(0, 2047) == 1023);    // output cap
  CHECK(t.quantize_at(0, -2048) == -1024);
}

TEST_CASE("divisor zero is rejected") {
  std::array<uint8_t, 64> divisors;
  divisors.fill(16);
  divisors[10] = 0;
  CHECK_THROWS_AS(QuantTable::from_divisors(divisors, ChannelClass::Luma),
                  InvalidTableError);
}

TEST_CASE("quantize and dequantize agree with per-entry arithmetic") {
  const QuantTable& t = QuantTable::standard(ChannelClass::Luma);
  DctCoeffBlock block;
  block.channel = Channel::Y;
  std::mt19937 rng(99);
  for (auto& c : block.coeffs) c = int32_t(rng() % 4096) - 2048;
  auto levels = quantize(block, t);
  for (int i = 0; i < 64; ++i) {
    CHECK(levels[i] == t.quantize_at(i, block.coeffs[i]));
  }
  DctCoeffBlock back = dequantize(levels, t, Channel::Y);
  for (int i = 0; i < 64; ++i)
    CHECK(back.coeffs[i] == levels[i] * t.divisors()[i]);
}

TEST_CASE("quantize_zigzag = zigzag of quantize") {
  const QuantTable& t = QuantTable::standard(ChannelClass::Chroma);
  DctCoeffBlock block;
  block.channel = Channel::Cb;
  for (int i = 0; i < 64; ++i) block.coeffs[i] = (i * 37) % 1200 - 600;
  QuantizedBlock q = quantize_zigzag(block, t);
  CHECK(q.channel == Channel::Cb);
  CHECK(q.coeffs == zigzag_scan(quantize(block, t)));
}

TEST_CASE("table text format loads and validates") {
  std::ostringstream text;
  text << "# test table\n";
  for (int i = 0; i < 64; ++i) text << (i % 8 ? " " : "\n") << (i + 1);
  std::istringstream in(text.str());
  QuantTable t = QuantTable::load(in, ChannelClass::Luma);
  CHECK(t.divisors()[0] == 1);
  CHECK(t.divisors()[63] == 64);

  std::istringstream short_table("16 11 10");
  CHECK_THROWS_AS(QuantTable::load(short_table, ChannelClass::Luma),
                  InvalidTableError);
  std::istringstream bad_value("300");
  CHECK_THROWS_AS(QuantTable::load(bad_value, ChannelClass::Luma),
                  InvalidTableError);
}
