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

#include "mjstream/bitstream.hpp"

#include <algorithm>

namespace mjstream {

AlignedValue align(const CodedUnit& unit) {
  if (unit.codeword_len < 2 || unit.codeword_len > kMaxCodewordBits)
    throw Error("codeword length outside [2,16]");
  if (unit.value_len > kMaxValueBits)
    throw Error("value length exceeds 11 bits");
  uint32_t packed = (uint32_t(unit.codeword) << unit.value_len) |
                    (unit.value_bits & ((1u << unit.value_len) - 1));
  AlignedValue out;
  out.len = unit.total_len();
  out.bits = packed << (kAlignedValueBits - out.len);
  return out;
}

std::optional<uint32_t> BitAccumulator::append(const AlignedValue& value) {
  if (value.len < 0 || value.len > kAlignedValueBits)
    throw Error("aligned value length outside [0,27]");
  uint32_t payload =
      value.len ? (value.bits >> (kAlignedValueBits - value.len)) : 0;
  bits_ = (bits_ << value.len) | payload;
  count_ += value.len;
  if (count_ < 32) return std::nullopt;
  count_ -= 32;
  uint32_t word = uint32_t(bits_ >> count_);
  bits_ &= (uint64_t(1) << count_) - 1;
  return word;
}

std::optional<uint32_t> BitAccumulator::flush() {
  if (count_ == 0) return std::nullopt;
  uint32_t word = uint32_t(bits_ << (32 - count_));
  bits_ = 0;
  count_ = 0;
  return word;
}

void WordStreamWriter::append(const CodedUnit& unit) {
  AlignedValue v = align(unit);
  bits_ += size_t(v.len);
  if (auto word = acc_.append(v)) words_.push_back(*word);
}

WordStream WordStreamWriter::finish() {
  if (auto word = acc_.flush()) words_.push_back(*word);
  WordStream out{std::move(words_), bits_};
  words_.clear();
  bits_ = 0;
  return out;
}

BitReader::BitReader(std::span<const uint32_t> words)
    : words_(words), end_(words.size() * 32) {}

uint32_t BitReader::read(int n) {
  if (n < 0 || n > 32) throw Error("bit read size outside [0,32]");
  if (pos_ + size_t(n) > end_)
    throw MalformedStreamError("bit stream exhausted");
  uint32_t out = 0;
  int need = n;
  while (need > 0) {
    size_t word_idx = pos_ >> 5;
    int offset = int(pos_ & 31);
    int take = std::min(need, 32 - offset);
    uint32_t word = words_[word_idx];
    if (take == 32) {  // whole word, offset is 0; avoid shifts by 32
      out = word;
    } else {
      uint32_t chunk = (word >> (32 - offset - take)) & ((1u << take) - 1);
      out = (out << take) | chunk;
    }
    pos_ += size_t(take);
    need -= take;
  }
  return out;
}

uint32_t BitReader::peek(int n) const {
  BitReader copy = *this;
  size_t avail = copy.end_ - copy.pos_;
  if (size_t(n) <= avail) return copy.read(n);
  // Past the end: real bits first, zero padding below them.
  if (avail == 0) return 0;
  return copy.read(int(avail)) << (size_t(n) - avail);
}

}  // namespace mjstream
