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

// Fixed-point 8x8 forward DCT (orthonormal scaling: the DC of a constant
// block v is 8v) built from two 1D passes of an even/odd butterfly network.
// Each 1D pass adds kDctFracBitsPerPass fractional bits, so pixel input
// (Q0) becomes Q5 after the row pass and Q10 after the column pass.

#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "mjstream/frame.hpp"

namespace mjstream {

inline constexpr int kDctFracBitsPerPass = 5;

// 1D pass output: eight values plus the fixed-point position they carry.
struct DctVector {
  std::array<int32_t, 8> values{};
  int frac_bits = 0;
  bool saturated = false;
};

// Final integer coefficients, clamped to [-2048, 2047].
struct DctCoeffBlock {
  std::array<int32_t, 64> coeffs{};
  Channel channel = Channel::Y;
  bool saturated = false;
};

// 2D result before the final rounding to integer; coefficients carry ten
// fractional bits. Kept public so accuracy can be measured without the
// rounding step folded in.
struct DctFixedBlock {
  std::array<int32_t, 64> q10{};
  Channel channel = Channel::Y;
  bool saturated = false;
};

// One 1D pass. `input_frac_bits` is the fixed-point position of the input;
// the output carries input_frac_bits + kDctFracBitsPerPass. Outputs are
// saturated (with the flag set) to the widest value a later pass can accept:
// 9 magnitude bits + fractional bits + 3 bits of transform gain, signed.
DctVector dct_1d(std::span<const int32_t, 8> input, int input_frac_bits);

// Rows then columns over an 8x8 block of level-shifted samples.
DctFixedBlock dct_2d_fixed(const PixelBlock& block);

// dct_2d_fixed plus rounding to integer coefficients.
DctCoeffBlock dct_2d(const PixelBlock& block);

// Floating-point inverse transform, rounded and clamped to [-128, 127].
// Decode side only; it never feeds back into the forward path.
PixelBlock idct_2d(const DctCoeffBlock& block);

}  // namespace mjstream
