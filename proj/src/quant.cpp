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

#include "mjstream/quant.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace mjstream {

const std::array<uint8_t, 64> kZigzagOrder = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6,  7,  14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63};

const std::array<uint8_t, 64> kRasterToZigzag = [] {
  std::array<uint8_t, 64> inv{};
  for (int i = 0; i < 64; ++i) inv[kZigzagOrder[i]] = uint8_t(i);
  return inv;
}();

namespace {

// 50%-quality photographic tables, raster order.
constexpr std::array<uint8_t, 64> kStdLuma = {
    16, 11, 10, 16, 24,  40,  51,  61,  12, 12, 14, 19, 26,  58,  60,  55,
    14, 13, 16, 24, 40,  57,  69,  56,  14, 17, 22, 29, 51,  87,  80,  62,
    18, 22, 37, 56, 68,  109, 103, 77,  24, 35, 55, 64, 81,  104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101, 72, 92, 95, 98, 112, 100, 103, 99};

constexpr std::array<uint8_t, 64> kStdChroma = {
    17, 18, 24, 47, 99, 99, 99, 99, 18, 21, 26, 66, 99, 99, 99, 99,
    24, 26, 56, 99, 99, 99, 99, 99, 47, 66, 99, 99, 99, 99, 99, 99,
    99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99,
    99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99};

int16_t clamp_output(int32_t v) {
  return int16_t(
      std::clamp(v, int32_t(QuantTable::kOutputMin),
                 int32_t(QuantTable::kOutputMax)));
}

// Reference rounded division, half away from zero.
int32_t rounded_div(int32_t v, int q) {
  int32_t mag = (std::abs(v) + q / 2) / q;
  return v < 0 ? -mag : mag;
}

}  // namespace

QuantTable QuantTable::from_divisors(const std::array<uint8_t, 64>& divisors,
                                     ChannelClass cls) {
  QuantTable t;
  t.divisors_ = divisors;
  t.class_ = cls;
  for (int i = 0; i < 64; ++i) {
    int q = divisors[i];
    if (q < 1)
      throw InvalidTableError("quantization divisor must be nonzero");
    t.reciprocals_[i] =
        uint32_t(((uint64_t(1) << kReciprocalFracBits) + q - 1) / q);
  }
  // Prove reciprocal multiplication equals rounded division over the whole
  // coefficient range; a divisor whose reciprocal loses precision is
  // rejected here rather than corrupting coefficients later.
  for (int i = 0; i < 64; ++i) {
    int q = t.divisors_[i];
    uint64_t r = t.reciprocals_[i];
    for (int32_t v = kInputMin; v <= kInputMax; ++v) {
      uint32_t mag = uint32_t(std::abs(v)) + uint32_t(q / 2);
      int32_t got = int32_t((mag * r) >> kReciprocalFracBits);
      if (v < 0) got = -got;
      if (got != rounded_div(v, q))
        throw InvalidTableError(
            "reciprocal does not reproduce rounded division for divisor " +
            std::to_string(q));
    }
  }
  return t;
}

const QuantTable& QuantTable::standard(ChannelClass cls) {
  static const QuantTable luma = from_divisors(kStdLuma, ChannelClass::Luma);
  static const QuantTable chroma =
      from_divisors(kStdChroma, ChannelClass::Chroma);
  return cls == ChannelClass::Luma ? luma : chroma;
}

QuantTable QuantTable::load(std::istream& in, ChannelClass cls) {
  std::array<uint8_t, 64> divisors{};
  int count = 0;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    int v;
    while (ls >> v) {
      if (count >= 64)
        throw InvalidTableError("quantization table has more than 64 values");
      if (v < 1 || v > 255)
        throw InvalidTableError("quantization divisor out of [1,255]");
      divisors[count++] = uint8_t(v);
    }
  }
  if (count != 64)
    throw InvalidTableError("quantization table needs exactly 64 values, got " +
                            std::to_string(count));
  return from_divisors(divisors, cls);
}

QuantTable QuantTable::load_file(const std::string& path, ChannelClass cls) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open quantization table: " + path);
  return load(in, cls);
}

int16_t QuantTable::quantize_at(int i, int32_t coeff) const {
  int32_t v = std::clamp(coeff, int32_t(kInputMin), int32_t(kInputMax));
  uint32_t mag = uint32_t(v < 0 ? -v : v) + uint32_t(divisors_[i] / 2);
  int32_t level =
      int32_t((uint64_t(mag) * reciprocals_[i]) >> kReciprocalFracBits);
  return clamp_output(v < 0 ? -level : level);
}

std::array<int16_t, 64> quantize(const DctCoeffBlock& block,
                                 const QuantTable& table) {
  std::array<int16_t, 64> out{};
  for (int i = 0; i < 64; ++i) out[i] = table.quantize_at(i, block.coeffs[i]);
  return out;
}

QuantizedBlock quantize_zigzag(const DctCoeffBlock& block,
                               const QuantTable& table) {
  QuantizedBlock out;
  out.channel = block.channel;
  out.coeffs = zigzag_scan(quantize(block, table));
  return out;
}

DctCoeffBlock dequantize(const std::array<int16_t, 64>& levels,
                         const QuantTable& table, Channel channel) {
  DctCoeffBlock out;
  out.channel = channel;
  for (int i = 0; i < 64; ++i)
    out.coeffs[i] = table.dequantize_at(i, levels[i]);
  return out;
}

}  // namespace mjstream
