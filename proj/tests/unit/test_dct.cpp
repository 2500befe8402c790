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

#include <cmath>
#include <random>

#include "mjstream/dct.hpp"
#include "oracles.hpp"

using namespace mjstream;

namespace {

// Independent double-precision reference transform (direct evaluation of
// the orthonormal basis, no butterfly structure shared with the library).
std::array<double, 64> reference_dct(const std::array<int16_t, 64>& g) {
  std::array<double, 64> out{};
  for (int u = 0; u < 8; ++u) {
    for (int v = 0; v < 8; ++v) {
      double cu = u == 0 ? 1.0 / std::sqrt(2.0) : 1.0;
      double cv = v == 0 ? 1.0 / std::sqrt(2.0) : 1.0;
      double s = 0;
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
          s += g[i * 8 + j] * std::cos((2 * i + 1) * u * M_PI / 16.0) *
               std::cos((2 * j + 1) * v * M_PI / 16.0);
      out[u * 8 + v] = 0.25 * cu * cv * s;
    }
  }
  return out;
}

PixelBlock block_from(const std::array<int16_t, 64>& samples) {
  PixelBlock b;
  b.samples = samples;
  return b;
}

}  // namespace

TEST_CASE("frozen reference blocks are self-consistent") {
  // Guards the frozen tables themselves: the in-test reference transform
  // must reproduce them.
  for (const auto& kat : oracles::kDctKats) {
    auto ref = reference_dct(kat.input);
    for (int i = 0; i < 64; ++i)
      CHECK(std::abs(ref[i] - kat.expected[i]) < 1e-4);
  }
}

TEST_CASE("fixed-point transform hits the frozen known answers") {
  for (const auto& kat : oracles::kDctKats) {
    CAPTURE(kat.name);
    DctFixedBlock fixed = dct_2d_fixed(block_from(kat.input));
    CHECK(!fixed.saturated);
    for (int i = 0; i < 64; ++i) {
      double got = double(fixed.q10[i]) / 1024.0;  // Q10 -> real
      double want = kat.expected[i];
      CAPTURE(i);
      if (std::abs(want) >= 1.0)
        CHECK(std::abs(got - want) <= 0.05 * std::abs(want));
      else
        CHECK(std::abs(got - want) <= 1.0);
    }
  }
}

TEST_CASE("constant block transforms to a lone DC of 8v") {
  for (int v : {-128, -1, 0, 1, 127}) {
    PixelBlock b;
    b.samples.fill(int16_t(v));
    DctCoeffBlock out = dct_2d(b);
    CHECK(out.coeffs[0] == 8 * v);
    for (int i = 1; i < 64; ++i) CHECK(out.coeffs[i] == 0);
    CHECK(!out.saturated);
  }
}

TEST_CASE("each 1D pass adds exactly five fractional bits") {
  std::array<int32_t, 8> input{10, -3, 44, 7, -120, 0, 9, 2};
  DctVector pass1 = dct_1d(std::span<const int32_t, 8>(input), 0);
  CHECK(pass1.frac_bits == 5);
  DctVector pass2 =
      dct_1d(std::span<const int32_t, 8>(pass1.values), pass1.frac_bits);
  CHECK(pass2.frac_bits == 10);
}

TEST_CASE("1D pass of a constant vector scales by 2*sqrt(2) in Q5") {
  // DC of eight ones is 8/(2*sqrt 2) = 2*sqrt(2) = 2.8284...; in Q5 that is
  // round(90.5) with the constant rounding used -> 91. All ACs vanish.
  std::array<int32_t, 8> ones;
  ones.fill(1);
  DctVector out = dct_1d(std::span<const int32_t, 8>(ones), 0);
  CHECK(out.values[0] == 91);
  for (int i = 1; i < 8; ++i) CHECK(out.values[i] == 0);
}

TEST_CASE("relative error stays within 5% over random blocks") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int iter = 0; iter < 2000; ++iter) {
    PixelBlock b;
    for (auto& s : b.samples) s = int16_t(int(rng() % 256) - 128);
    auto ref = reference_dct(b.samples);
    DctFixedBlock fixed = dct_2d_fixed(b);
    REQUIRE(!fixed.saturated);
    for (int i = 0; i < 64; ++i) {
      double got = double(fixed.q10[i]) / 1024.0;
      if (std::abs(ref[i]) >= 1.0) {
        CHECK(std::abs(got - ref[i]) <= 0.05 * std::abs(ref[i]));
        ++checked;
      } else {
        CHECK(std::abs(got - ref[i]) <= 1.0);
      }
    }
  }
  CHECK(checked > 50000);  // the bound must actually get exercised
}

TEST_CASE("integer coefficients stay within the 12-bit signed range") {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 500; ++iter) {
    PixelBlock b;
    // Adversarial content: saturated checkerboards maximize AC energy.
    for (int i = 0; i < 64; ++i) {
      int row = i / 8, col = i % 8;
      b.samples[i] = ((row + col) % 2) ^ (rng() % 4 == 0) ? 127 : -128;
    }
    DctCoeffBlock out = dct_2d(b);
    for (int i = 0; i < 64; ++i) {
      CHECK(out.coeffs[i] <= 2047);
      CHECK(out.coeffs[i] >= -2048);
    }
  }
}

TEST_CASE("saturation clamps and flags instead of wrapping") {
  // Inputs far outside the pixel range overflow the Q5 headroom; the pass
  // must clamp to the widest representable value and raise the flag.
  std::array<int32_t, 8> huge;
  huge.fill(100000);
  DctVector out = dct_1d(std::span<const int32_t, 8>(huge), 0);
  CHECK(out.saturated);
  // 9 + 5 + 3 = 17 bits signed.
  CHECK(out.values[0] == (1 << 16) - 1);
}

TEST_CASE("inverse transform reproduces pixels from exact coefficients") {
  std::mt19937_64 rng(77);
  for (int iter = 0; iter < 200; ++iter) {
    PixelBlock b;
    for (auto& s : b.samples) s = int16_t(int(rng() % 256) - 128);
    // Round the reference transform to integers, then invert: the result
    // must come back close to the original pixels (quantization-free path).
    auto ref = reference_dct(b.samples);
    DctCoeffBlock coeffs;
    for (int i = 0; i < 64; ++i)
      coeffs.coeffs[i] = int32_t(std::lround(ref[i]));
    PixelBlock back = idct_2d(coeffs);
    for (int i = 0; i < 64; ++i)
      CHECK(std::abs(back.samples[i] - b.samples[i]) <= 2);
  }
}
