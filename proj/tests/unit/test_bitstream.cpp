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

#include <random>

#include "mjstream/bitstream.hpp"

using namespace mjstream;

TEST_CASE("align packs codeword then value, left-aligned in 27 bits") {
  // codeword 1010 (4 bits), value 101 (3 bits) -> 1010101 then 20 zeros.
  CodedUnit unit{0b1010, 4, 0b101, 3, false};
  AlignedValue v = align(unit);
  CHECK(v.len == 7);
  CHECK(v.bits == uint32_t(0b1010101) << 20);
}

TEST_CASE("align rejects out-of-range lengths") {
  CHECK_THROWS_AS(align(CodedUnit{1, 1, 0, 0, false}), Error);
  CHECK_THROWS_AS(align(CodedUnit{1, 17, 0, 0, false}), Error);
  CHECK_THROWS_AS(align(CodedUnit{1, 4, 0, 12, false}), Error);
}

TEST_CASE("accumulator emits a word only once 32 bits are pending") {
  BitAccumulator acc;
  // Four 4+3 = 7-bit units: 28 bits, no word yet.
  CodedUnit unit{0b1010, 4, 0b101, 3, false};
  for (int i = 0; i < 4; ++i) CHECK(!acc.append(align(unit)));
  CHECK(acc.pending_bits() == 28);
  // One more crosses 32: word out, 3 bits stay.
  auto word = acc.append(align(unit));
  REQUIRE(word.has_value());
  CHECK(acc.pending_bits() == 3);
  // 1010101 repeated; first 32 bits of the repetition.
  uint32_t expected = 0;
  for (int i = 0; i < 32; ++i) {
    int bit = (0b1010101 >> (6 - (i % 7))) & 1;
    expected = (expected << 1) | uint32_t(bit);
  }
  CHECK(*word == expected);
}

TEST_CASE("flush pads the tail with zeros and resets") {
  BitAccumulator acc;
  CHECK(!acc.flush().has_value());
  acc.append(AlignedValue{uint32_t(0b1011) << 23, 4});
  auto word = acc.flush();
  REQUIRE(word.has_value());
  CHECK(*word == uint32_t(0b1011) << 28);
  CHECK(acc.pending_bits() == 0);
  CHECK(!acc.flush().has_value());
}

TEST_CASE("writer produces whole words and an exact bit count") {
  WordStreamWriter writer;
  CodedUnit eob{0b1010, 4, 0, 0, true};
  for (int i = 0; i < 8; ++i) writer.append(eob);  // exactly 32 bits
  WordStream ws = writer.finish();
  REQUIRE(ws.words.size() == 1);
  CHECK(ws.total_bits == 32);
  CHECK(ws.words[0] == 0xAAAAAAAAu);
}

TEST_CASE("reader round-trips random unit sequences bit-exactly") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    WordStreamWriter writer;
    std::vector<std::pair<int, uint32_t>> pieces;  // (len, payload)
    int units = 1 + int(rng() % 40);
    for (int u = 0; u < units; ++u) {
      CodedUnit unit;
      unit.codeword_len = uint8_t(2 + rng() % 15);
      unit.codeword = uint16_t(rng() & ((1u << unit.codeword_len) - 1));
      unit.value_len = uint8_t(rng() % 12);
      unit.value_bits =
          uint16_t(unit.value_len ? rng() & ((1u << unit.value_len) - 1) : 0);
      writer.append(unit);
      pieces.emplace_back(unit.codeword_len, unit.codeword);
      if (unit.value_len) pieces.emplace_back(unit.value_len, unit.value_bits);
    }
    WordStream ws = writer.finish();
    CHECK(ws.words.size() == (ws.total_bits + 31) / 32);

    BitReader reader(ws);
    for (auto [len, payload] : pieces)
      CHECK(reader.read(len) == payload);
    // Tail padding is all zero bits.
    size_t left = reader.remaining_bits();
    CHECK(left < 32);
    if (left) CHECK(reader.read(int(left)) == 0);
  }
}

TEST_CASE("reader throws past the final word") {
  WordStream ws{{0xDEADBEEFu}, 32};
  BitReader reader(ws);
  CHECK(reader.read(32) == 0xDEADBEEFu);
  CHECK_THROWS_AS(reader.read(1), MalformedStreamError);
}

TEST_CASE("peek does not advance and zero-pads past the end") {
  WordStream ws{{0xF0000000u}, 4};
  BitReader reader(ws);
  CHECK(reader.peek(4) == 0xF);
  CHECK(reader.peek(4) == 0xF);
  CHECK(reader.read(4) == 0xF);
  CHECK(reader.consumed_bits() == 4);
  reader.read(28);
  CHECK(reader.peek(8) == 0);  // nothing left, peek pads with zeros
}

TEST_CASE("reads split across word boundaries") {
  WordStream ws{{0x12345678u, 0x9ABCDEF0u}, 64};
  BitReader reader(ws);
  CHECK(reader.read(12) == 0x123);
  CHECK(reader.read(28) == 0x456789A);  // crosses the boundary
  CHECK(reader.read(24) == 0xBCDEF0);
}
