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

// Bit-level serialization. Entropy symbols become (codeword, value-bits)
// pairs, each pair is packed left-aligned into a fixed 27-bit container
// (16-bit max codeword + 11-bit max value), and the containers are
// concatenated MSB-first into 32-bit words.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mjstream/error.hpp"

namespace mjstream {

inline constexpr int kMaxCodewordBits = 16;
inline constexpr int kMaxValueBits = 11;
inline constexpr int kAlignedValueBits = kMaxCodewordBits + kMaxValueBits;

// One entropy-coded symbol ready for serialization. Both fields are
// right-aligned here; align() shifts them into wire position.
struct CodedUnit {
  uint16_t codeword = 0;
  uint8_t codeword_len = 0;  // 2..16
  uint16_t value_bits = 0;
  uint8_t value_len = 0;  // 0..11
  bool end_of_block = false;

  int total_len() const { return codeword_len + value_len; }
};

// Codeword and value bits packed together, left-aligned within 27 bits:
// bit (26) is the first bit on the wire, bits below (27 - len) are zero.
struct AlignedValue {
  uint32_t bits = 0;
  int len = 0;
};

AlignedValue align(const CodedUnit& unit);

// Packs aligned values into 32-bit words. After each append at most one
// word is emitted and fewer than 32 bits stay pending; since one append
// brings at most 27 bits, the pending count peaks at 58 and fits the
// 64-bit scratch register.
class BitAccumulator {
 public:
  // Returns the completed word if the append filled one.
  std::optional<uint32_t> append(const AlignedValue& value);

  // Returns the final partial word, right-padded with zero bits, and
  // resets. Empty accumulator flushes to nothing.
  std::optional<uint32_t> flush();

  int pending_bits() const { return count_; }

 private:
  uint64_t bits_ = 0;  // right-aligned, oldest bit highest
  int count_ = 0;
};

// A whole-word bit stream plus the count of meaningful bits (total_bits
// never exceeds 32 * words.size(); the tail of the last word is padding).
struct WordStream {
  std::vector<uint32_t> words;
  size_t total_bits = 0;
};

// Accumulates CodedUnits into a WordStream.
class WordStreamWriter {
 public:
  void append(const CodedUnit& unit);
  // Flushes the partial word and returns the finished stream; the writer
  // resets and can be reused.
  WordStream finish();
  size_t bits_written() const { return bits_; }

 private:
  BitAccumulator acc_;
  std::vector<uint32_t> words_;
  size_t bits_ = 0;
};

// MSB-first reader over a word stream. Reads are bounded by the word array,
// not total_bits: a decoder is allowed to consume the zero padding after
// the last symbol, but running past the final word throws
// MalformedStreamError.
class BitReader {
 public:
  explicit BitReader(std::span<const uint32_t> words);
  explicit BitReader(const WordStream& stream) : BitReader(stream.words) {}

  // n in [0, 32]. Returns the next n bits right-aligned.
  uint32_t read(int n);
  // Like read but does not advance; past-the-end bits read as zero.
  uint32_t peek(int n) const;

  size_t consumed_bits() const { return pos_; }
  size_t remaining_bits() const { return end_ - pos_; }

 private:
  std::span<const uint32_t> words_;
  size_t end_ = 0;
  size_t pos_ = 0;
};

}  // namespace mjstream
