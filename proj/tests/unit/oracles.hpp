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

// Frozen expected values for the test suite. Everything in this header was
// computed with independent reference implementations (NumPy for the
// transform, Python struct/binascii for the wire frames, hand arithmetic for
// the small cases) before the production code existed. Tests compare the
// library against these values; nothing here is produced by the library.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace oracles {

// ---------------------------------------------------------------------------
// Zigzag scan order: raster index visited at each scan position.
inline constexpr std::array<uint8_t, 64> kZigzag = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6,  7,  14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63};

// ---------------------------------------------------------------------------
// 2D DCT known-answer blocks. Inputs are level-shifted samples in raster
// order; expected outputs are the real-valued orthonormal 2D DCT (the one
// whose DC of a constant block v is 8v), full double precision.
struct DctKat {
    const char* name;
    std::array<int16_t, 64> input;
    std::array<double, 64> expected;
};

inline const std::array<DctKat, 4> kDctKats = {{
    {"constant -128",
     {-128, -128, -128, -128, -128, -128, -128, -128, -128, -128, -128, -128,
      -128, -128, -128, -128, -128, -128, -128, -128, -128, -128, -128, -128,
      -128, -128, -128, -128, -128, -128, -128, -128, -128, -128, -128, -128,
      -128, -128, -128, -128, -128, -128, -128, -128, -128, -128, -128, -128,
      -128, -128, -128, -128, -128, -128, -128, -128, -128, -128, -128, -128,
      -128, -128, -128, -128},
     {-1024.0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
      0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
      0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
      0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}},
    {"diagonal ramp",
     {-120, -118, -116, -114, -112, -110, -108, -106, -104, -102, -100, -98,
      -96,  -94,  -92,  -90,  -88,  -86,  -84,  -82,  -80,  -78,  -76,  -74,
      -72,  -70,  -68,  -66,  -64,  -62,  -60,  -58,  -56,  -54,  -52,  -50,
      -48,  -46,  -44,  -42,  -40,  -38,  -36,  -34,  -32,  -30,  -28,  -26,
      -24,  -22,  -20,  -18,  -16,  -14,  -12,  -10,  -8,   -6,   -4,   -2,
      0,    2,    4,    6},
     {-456.0,      -36.443282, 0.0, -3.809636, 0.0, -1.136478, 0.0, -0.286816,
      -291.546259, 0.0,        0.0, 0.0,       0.0, 0.0,       0.0, 0.0,
      0.0,         0.0,        0.0, 0.0,       0.0, 0.0,       0.0, 0.0,
      -30.477085,  0.0,        0.0, 0.0,       0.0, 0.0,       0.0, 0.0,
      0.0,         0.0,        0.0, 0.0,       0.0, 0.0,       0.0, 0.0,
      -9.091828,   0.0,        0.0, 0.0,       0.0, 0.0,       0.0, 0.0,
      0.0,         0.0,        0.0, 0.0,       0.0, 0.0,       0.0, 0.0,
      -2.294525,   0.0,        0.0, 0.0,       0.0, 0.0,       0.0, 0.0}},
    {"single horizontal cosine",
     {98, 83, 56, 20, -20, -56, -83, -98, 98, 83, 56, 20, -20, -56, -83, -98,
      98, 83, 56, 20, -20, -56, -83, -98, 98, 83, 56, 20, -20, -56, -83, -98,
      98, 83, 56, 20, -20, -56, -83, -98, 98, 83, 56, 20, -20, -56, -83, -98,
      98, 83, 56, 20, -20, -56, -83, -98, 98, 83, 56, 20, -20, -56, -83, -98},
     {0.0, 566.088970, 0.0, -2.103940, 0.0, 1.683352, 0.0, -0.132611,
      0.0, 0.0,        0.0, 0.0,       0.0, 0.0,      0.0, 0.0,
      0.0, 0.0,        0.0, 0.0,       0.0, 0.0,      0.0, 0.0,
      0.0, 0.0,        0.0, 0.0,       0.0, 0.0,      0.0, 0.0,
      0.0, 0.0,        0.0, 0.0,       0.0, 0.0,      0.0, 0.0,
      0.0, 0.0,        0.0, 0.0,       0.0, 0.0,      0.0, 0.0,
      0.0, 0.0,        0.0, 0.0,       0.0, 0.0,      0.0, 0.0,
      0.0, 0.0,        0.0, 0.0,       0.0, 0.0,      0.0, 0.0}},
    {"fixed pseudo-random",
     {122,  122,  124, -31, -85,  108, -102, -62, -93, -47,  9,   -98,
      75,   -67,  73,  -47, 75,   118, 117,  -61, 14,  -16,  -63, 28,
      101,  93,   37,  93,  4,    44,  116,  40,  -116, 60,  61,  -71,
      93,   -84,  73,  94,  -5,   -113, -87, 47,  -118, 43,  -93, 28,
      12,   -113, -83, 122, -25,  -16, -12,  8,   -79,  -128, 37,  -64,
      40,   91,   -18, -20},
     {38.125000,   2.525958,   0.848748,   -21.691599,  -32.875000,
      -13.331317,  67.703847,  23.477278,  109.998218,  192.433031,
      80.539766,   -6.877530,  -132.232511, -88.230722, -23.804247,
      66.828299,   -109.828071, 31.930676, -75.482201,  90.800577,
      -33.687266,  21.802475,  133.689047, -15.744008,  -76.907699,
      8.639938,    19.510134,  -12.938872, 33.104686,   28.593700,
      26.515569,   -113.854010, 135.125000, 23.101896,  4.811564,
      -0.866721,   -110.875000, -48.278758, 11.942784,  32.288160,
      127.382924,  156.130552, 53.604446,  41.636593,   60.008238,
      110.257631,  42.252758,  -187.178974, -4.162466,  119.257915,
      50.689047,   14.197702,  -34.618628, -58.149986,  167.232201,
      -93.129719,  22.754144,  52.371192,  14.427843,   -78.950366,
      -15.090287,  -114.154072, -14.290324, 80.248210}},
}};

// ---------------------------------------------------------------------------
// Coefficient category coding: value, category, category bits (value_len ==
// category). Negative values carry the one's complement of |v|.
struct CategoryKat {
    int value;
    int category;
    uint16_t bits;
};

inline constexpr std::array<CategoryKat, 16> kCategoryKats = {{
    {0, 0, 0},      {1, 1, 0b1},     {-1, 1, 0b0},     {2, 2, 0b10},
    {3, 2, 0b11},   {-2, 2, 0b01},   {-3, 2, 0b00},    {4, 3, 0b100},
    {7, 3, 0b111},  {-4, 3, 0b011},  {-7, 3, 0b000},   {8, 4, 0b1000},
    {-15, 4, 0b0000}, {255, 8, 0xFF}, {-1024, 11, 0x3FF}, {2047, 11, 0x7FF},
}};

// ---------------------------------------------------------------------------
// Canonical Huffman spot checks: (symbol index, code length, code value).
struct HuffKat {
    uint8_t index;
    uint8_t len;
    uint16_t code;
};

inline constexpr std::array<HuffKat, 7> kDcLumaKats = {{
    {0x00, 2, 0x000}, {0x01, 3, 0x002}, {0x02, 3, 0x003}, {0x03, 3, 0x004},
    {0x04, 3, 0x005}, {0x05, 3, 0x006}, {0x0B, 9, 0x1FE},
}};
inline constexpr std::array<HuffKat, 4> kDcChromaKats = {{
    {0x00, 2, 0x000}, {0x01, 2, 0x001}, {0x02, 2, 0x002}, {0x0B, 11, 0x7FE},
}};
inline constexpr std::array<HuffKat, 8> kAcLumaKats = {{
    {0x00, 4, 0x00A},  // end-of-block
    {0xF0, 11, 0x7F9}, // zero-run-length
    {0x01, 2, 0x000},  {0x11, 4, 0x00C}, {0x02, 2, 0x001},
    {0x21, 5, 0x01C},  {0x04, 4, 0x00B}, {0xFA, 16, 0xFFFE},
}};
inline constexpr std::array<HuffKat, 5> kAcChromaKats = {{
    {0x00, 2, 0x000},  // end-of-block
    {0xF0, 10, 0x3FA}, // zero-run-length
    {0x01, 2, 0x001},  {0x11, 4, 0x00B}, {0xFA, 16, 0xFFFE},
}};

// ---------------------------------------------------------------------------
// Quantizer known answers: (divisor, input, expected). Rounding is
// half-away-from-zero: q=16 maps 8 -> 1 and -8 -> -1; 7 -> 0.
struct QuantKat {
    uint8_t divisor;
    int32_t input;
    int16_t expected;
};

inline constexpr std::array<QuantKat, 10> kQuantKats = {{
    {16, 0, 0},     {16, 7, 0},    {16, 8, 1},     {16, -8, -1},
    {16, 2047, 128}, {16, -2048, -128}, {1, 2047, 1023}, {1, -2048, -1024},
    {99, 49, 0},    {99, 50, 1},
}};

// ---------------------------------------------------------------------------
// CRC-32 (IEEE 802.3, reflected) knowns.
inline constexpr uint32_t kCrc32Check = 0xCBF43926;  // crc32("123456789")
inline constexpr uint32_t kCrc32Residue = 0x2144DF1C; // crc32(data + fcs_le)

// IPv4 header checksum worked example (checksum field zeroed on input).
inline constexpr std::array<uint8_t, 20> kIpv4Example = {
    0x45, 0x00, 0x00, 0x73, 0x00, 0x00, 0x40, 0x00, 0x40, 0x11,
    0x00, 0x00, 0xC0, 0xA8, 0x00, 0x01, 0xC0, 0xA8, 0x00, 0xC7};
inline constexpr uint16_t kIpv4ExampleChecksum = 0xB861;

// ---------------------------------------------------------------------------
// Complete reference wire frame, built with an independent Python
// implementation (struct + binascii.crc32). Video packet, seq 7, data
// DE AD BE EF, no preamble, default addressing:
//   dst 02:00:00:00:00:02  src 02:00:00:00:00:01
//   192.168.1.1:5005 -> 192.168.1.2:5005, TTL 64
// 48 header+data bytes, zero-padded to 60, FCS appended low byte first.
inline constexpr std::array<uint8_t, 64> kReferenceFrame = {
    0x02, 0x00, 0x00, 0x00, 0x00, 0x02, 0x02, 0x00, 0x00, 0x00, 0x00, 0x01,
    0x08, 0x00, 0x45, 0x00, 0x00, 0x22, 0x00, 0x00, 0x00, 0x00, 0x40, 0x11,
    0xF7, 0x77, 0xC0, 0xA8, 0x01, 0x01, 0xC0, 0xA8, 0x01, 0x02, 0x13, 0x8D,
    0x13, 0x8D, 0x00, 0x0E, 0x00, 0x00, 0x01, 0x07, 0xDE, 0xAD, 0xBE, 0xEF,
    0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,
    0xB8, 0x51, 0xFD, 0x13};

// Frame sizes: payload -> total frame length, preamble off.
// 4 data bytes pad up to the 64-byte minimum; 800 -> 848; 1470 -> 1518.
inline constexpr size_t kAudioFrameSize = 848;
inline constexpr size_t kMaxFrameSize = 1518;

// ---------------------------------------------------------------------------
// Throughput model knowns: mean payload 135 bytes, 120 packets/frame,
// 100 MHz clock -> 12*240 + 384 + 135*8 = 4344 cycles/packet,
// 1e8 / (4344 * 120) = 191.8355... frames/s.
inline constexpr double kThroughputKatCycles = 4344.0;
inline constexpr double kThroughputKatFps = 191.8354818907305;

}  // namespace oracles
