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

// Entropy coding for quantized blocks: coefficient categories, zero-run
// symbols, and Huffman tables.
//
// The DC coefficient of every block is coded standalone (raw magnitude, no
// prediction from the previous block), so any packet can be decoded without
// its neighbors. AC coefficients are run-length coded: a symbol carries
// (zero run, category) in one byte, runs of 16+ zeros emit the zero-run
// symbol (0xF0), and the end-of-block symbol (0x00) always terminates the
// block, even when coefficient 63 is nonzero.

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mjstream/bitstream.hpp"
#include "mjstream/quant.hpp"

namespace mjstream {

inline constexpr int kMaxCategory = 11;

// Category: bit width of |v|; 0 for v == 0. Input must be within the
// coefficient range [-2047, 2047] (plus -2048, which also fits 11 bits).
int category_of(int32_t v);

// The category-sized bit pattern for v: v itself when positive, the one's
// complement of |v| when negative (a leading 0 bit marks negatives).
uint16_t category_bits(int32_t v);

// Recovers v from (category, bits). Throws MalformedStreamError for
// category > kMaxCategory.
int32_t decategorize(int category, uint16_t bits);

// One run-length symbol. For AC symbols `run` is the count of zeros that
// precede `value`. The DC coefficient is emitted as the first symbol with
// run == 0. EOB is (0,0); the zero-run symbol is (15,0).
struct RleSymbol {
  uint8_t run = 0;
  uint8_t size = 0;  // category of value
  int16_t value = 0;

  static constexpr RleSymbol eob() { return {0, 0, 0}; }
  static constexpr RleSymbol zrl() { return {15, 0, 0}; }
  bool is_eob() const { return run == 0 && size == 0; }
  bool is_zrl() const { return run == 15 && size == 0; }
};

// Zigzag-ordered block -> DC symbol, AC symbols, terminating EOB.
std::vector<RleSymbol> rle_encode_block(const QuantizedBlock& block);

// Inverse of rle_encode_block. The symbol list must end with EOB and must
// not overrun 64 coefficients. Throws MalformedStreamError.
QuantizedBlock rle_decode_block(std::span<const RleSymbol> symbols,
                                Channel channel);

enum class TableClass : uint8_t {
  DcLuma = 0,
  AcLuma = 1,
  DcChroma = 2,
  AcChroma = 3,
};

std::string_view to_string(TableClass cls);

struct HuffCode {
  uint16_t code = 0;  // right-aligned
  uint8_t len = 0;    // 2..16
};

// Prefix-free variable-length code over 8-bit symbol indexes. DC tables map
// the DC category directly; AC tables map (run << 4) | category.
//
// Construction validates: every length in [2, 16], no duplicate indexes,
// no codeword a prefix of another. Decoding walks length buckets, so
// non-canonical (but prefix-free) codes load fine.
class HuffmanTable {
 public:
  struct Entry {
    uint8_t index;
    HuffCode code;
  };

  HuffmanTable(std::vector<Entry> entries, bool dc);

  // Built-in tables (the usual photographic set).
  static const HuffmanTable& standard(TableClass cls);

  // Text format, one entry per line: INDEX_HEX LENGTH CODE_BINARY.
  // '#' starts a comment. Throws InvalidTableError / IoError.
  static HuffmanTable load(std::istream& in, bool dc);
  static HuffmanTable load_file(const std::string& path, bool dc);

  std::optional<HuffCode> code_for(uint8_t index) const;
  bool is_dc() const { return dc_; }
  const std::vector<Entry>& entries() const { return entries_; }

  // Reads one codeword from the stream and returns its symbol index.
  // Throws MalformedStreamError when no codeword matches.
  uint8_t decode_index(BitReader& reader) const;

 private:
  std::vector<Entry> entries_;
  std::array<HuffCode, 256> by_index_{};
  std::array<bool, 256> present_{};
  // Decoder buckets: for each code length, sorted (code, index) pairs.
  std::array<std::vector<std::pair<uint16_t, uint8_t>>, kMaxCodewordBits + 1>
      by_len_{};
  bool dc_ = false;
};

// Symbol -> codeword + value bits. Throws InvalidSymbolError when the table
// has no codeword for the symbol or the symbol does not fit the table class
// (e.g. a nonzero run given to a DC table).
CodedUnit huffman_encode(const RleSymbol& symbol, const HuffmanTable& table);

// One codeword from the stream; exposed for tools and tests.
uint8_t huffman_decode(BitReader& reader, const HuffmanTable& table);

// Full block encode: RLE + Huffman. First symbol uses `dc`, the rest `ac`;
// the final unit has end_of_block set. AC coefficients of exactly -1024 are
// folded to -1023 on the way in: the AC alphabet stops at category 10, and
// losing that one LSB beats refusing the block.
std::vector<CodedUnit> encode_block(const QuantizedBlock& block,
                                    const HuffmanTable& dc,
                                    const HuffmanTable& ac);

// Decodes one block (through the trailing EOB) from the reader.
QuantizedBlock decode_block(BitReader& reader, Channel channel,
                            const HuffmanTable& dc, const HuffmanTable& ac);

}  // namespace mjstream
