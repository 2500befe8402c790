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

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "mjstream/dct.hpp"

namespace mjstream {

// Scan order: kZigzagOrder[i] is the raster index visited at scan position i.
extern const std::array<uint8_t, 64> kZigzagOrder;
// Inverse: kRasterToZigzag[r] is the scan position of raster index r.
extern const std::array<uint8_t, 64> kRasterToZigzag;

template <typename T>
std::array<T, 64> zigzag_scan(const std::array<T, 64>& raster) {
  std::array<T, 64> out{};
  for (int i = 0; i < 64; ++i) out[i] = raster[kZigzagOrder[i]];
  return out;
}

template <typename T>
std::array<T, 64> inverse_zigzag(const std::array<T, 64>& zz) {
  std::array<T, 64> out{};
  for (int i = 0; i < 64; ++i) out[kZigzagOrder[i]] = zz[i];
  return out;
}

// Division-free quantizer. Each divisor q gets a precomputed reciprocal
// R = ceil(2^19 / q); quantization is then ((|v| + q/2) * R) >> 19 with the
// sign restored, which equals round-half-away-from-zero division for every
// representable coefficient. The constructor proves that equality
// exhaustively over the full input range and rejects the table otherwise.
class QuantTable {
 public:
  static constexpr int kReciprocalFracBits = 19;
  static constexpr int kInputMin = -2048;
  static constexpr int kInputMax = 2047;
  static constexpr int kOutputMin = -1024;
  static constexpr int kOutputMax = 1023;

  // Divisors in raster order, each in [1, 255].
  static QuantTable from_divisors(const std::array<uint8_t, 64>& divisors,
                                  ChannelClass cls);

  // Built-in tables (the usual 50%-quality photographic set).
  static const QuantTable& standard(ChannelClass cls);

  // Text format: 64 divisors in raster order, whitespace separated,
  // '#' starts a comment. Throws InvalidTableError / IoError.
  static QuantTable load(std::istream& in, ChannelClass cls);
  static QuantTable load_file(const std::string& path, ChannelClass cls);

  // Quantizes one coefficient at raster index i. Input outside
  // [kInputMin, kInputMax] is clamped first.
  int16_t quantize_at(int i, int32_t coeff) const;

  // Real-valued dequantization of one zigzag-position coefficient is not
  // needed; dequantize works in raster order like quantize.
  int32_t dequantize_at(int i, int32_t level) const {
    return level * divisors_[i];
  }

  const std::array<uint8_t, 64>& divisors() const { return divisors_; }
  uint32_t reciprocal_at(int i) const { return reciprocals_[i]; }
  ChannelClass channel_class() const { return class_; }

 private:
  QuantTable() = default;

  std::array<uint8_t, 64> divisors_{};
  std::array<uint32_t, 64> reciprocals_{};
  ChannelClass class_ = ChannelClass::Luma;
};

// Quantized coefficients of one block, zigzag order.
struct QuantizedBlock {
  std::array<int16_t, 64> coeffs{};
  Channel channel = Channel::Y;
};

// Raster-order coefficients in, raster-order levels out.
std::array<int16_t, 64> quantize(const DctCoeffBlock& block,
                                 const QuantTable& table);

// quantize + zigzag in one step; what the packetizer uses.
QuantizedBlock quantize_zigzag(const DctCoeffBlock& block,
                               const QuantTable& table);

// Raster-order levels in, raster-order coefficients out.
DctCoeffBlock dequantize(const std::array<int16_t, 64>& levels,
                         const QuantTable& table, Channel channel);

}  // namespace mjstream
