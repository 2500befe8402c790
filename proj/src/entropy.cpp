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

#include "mjstream/entropy.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

namespace mjstream {

int category_of(int32_t v) {
  uint32_t mag = uint32_t(v < 0 ? -int64_t(v) : v);
  if (mag > 2047) throw Error("coefficient magnitude exceeds 11 bits");
  return std::bit_width(mag);
}

uint16_t category_bits(int32_t v) {
  int cat = category_of(v);
  if (v >= 0) return uint16_t(v);
  // Negative values carry the one's complement of the magnitude: the top
  // bit of the field is 0 exactly when the value is negative.
  return uint16_t((-v) ^ ((1u << cat) - 1));
}

int32_t decategorize(int category, uint16_t bits) {
  if (category < 0 || category > kMaxCategory)
    throw MalformedStreamError("coefficient category out of range");
  if (category == 0) return 0;
  uint16_t mask = uint16_t((1u << category) - 1);
  bits &= mask;
  if (bits >> (category - 1)) return int32_t(bits);
  return -int32_t(bits ^ mask);
}

std::vector<RleSymbol> rle_encode_block(const QuantizedBlock& block) {
  std::vector<RleSymbol> out;
  out.reserve(16);
  // DC first, standalone; its category is the symbol index in a DC table.
  int32_t dc = block.coeffs[0];
  out.push_back({0, uint8_t(category_of(dc)), int16_t(dc)});

  int run = 0;
  for (int i = 1; i < 64; ++i) {
    int32_t v = block.coeffs[i];
    if (v == 0) {
      ++run;
      continue;
    }
    while (run >= 16) {
      out.push_back(RleSymbol::zrl());
      run -= 16;
    }
    out.push_back({uint8_t(run), uint8_t(category_of(v)), int16_t(v)});
    run = 0;
  }
  // Trailing zeros collapse into EOB, and EOB closes the block even when
  // coefficient 63 is nonzero.
  out.push_back(RleSymbol::eob());
  return out;
}

QuantizedBlock rle_decode_block(std::span<const RleSymbol> symbols,
                                Channel channel) {
  if (symbols.empty())
    throw MalformedStreamError("empty symbol sequence");
  QuantizedBlock out;
  out.channel = channel;
  const RleSymbol& dc = symbols[0];
  if (dc.run != 0)
    throw MalformedStreamError("leading DC symbol cannot carry a zero run");
  out.coeffs[0] = dc.value;

  int k = 1;
  bool closed = false;
  for (size_t s = 1; s < symbols.size(); ++s) {
    const RleSymbol& sym = symbols[s];
    if (closed)
      throw MalformedStreamError("symbols after end-of-block");
    if (sym.is_eob()) {
      closed = true;
      continue;
    }
    int advance = sym.is_zrl() ? 16 : sym.run + 1;
    if (k + advance > 64)
      throw MalformedStreamError("coefficient index overruns the block");
    k += advance;
    if (!sym.is_zrl()) out.coeffs[k - 1] = sym.value;
  }
  if (!closed)
    throw MalformedStreamError("symbol sequence missing end-of-block");
  return out;
}

std::string_view to_string(TableClass cls) {
  switch (cls) {
    case TableClass::DcLuma: return "dc_luma";
    case TableClass::AcLuma: return "ac_luma";
    case TableClass::DcChroma: return "dc_chroma";
    case TableClass::AcChroma: return "ac_chroma";
  }
  return "?";
}

HuffmanTable::HuffmanTable(std::vector<Entry> entries, bool dc)
    : entries_(std::move(entries)), dc_(dc) {
  if (entries_.empty()) throw InvalidTableError("empty Huffman table");
  for (const Entry& e : entries_) {
    if (e.code.len < 2 || e.code.len > kMaxCodewordBits)
      throw InvalidTableError("Huffman code length outside [2,16]");
    if (e.code.code >> e.code.len)
      throw InvalidTableError("Huffman codeword wider than its length");
    if (present_[e.index])
      throw InvalidTableError("duplicate Huffman symbol index");
    present_[e.index] = true;
    by_index_[e.index] = e.code;
    by_len_[e.code.len].emplace_back(e.code.code, e.index);
  }
  // Prefix-freeness: no codeword may match the leading bits of a longer
  // one. Quadratic over <=256 entries; construction-time only.
  for (size_t a = 0; a < entries_.size(); ++a) {
    for (size_t b = a + 1; b < entries_.size(); ++b) {
      const HuffCode &ca = entries_[a].code, &cb = entries_[b].code;
      const HuffCode &shorter = ca.len <= cb.len ? ca : cb;
      const HuffCode &longer = ca.len <= cb.len ? cb : ca;
      if ((longer.code >> (longer.len - shorter.len)) == shorter.code)
        throw InvalidTableError("Huffman table is not prefix-free");
    }
  }
  for (auto& bucket : by_len_) std::sort(bucket.begin(), bucket.end());
}

std::optional<HuffCode> HuffmanTable::code_for(uint8_t index) const {
  if (!present_[index]) return std::nullopt;
  return by_index_[index];
}

uint8_t HuffmanTable::decode_index(BitReader& reader) const {
  uint16_t acc = 0;
  for (int len = 1; len <= kMaxCodewordBits; ++len) {
    acc = uint16_t((acc << 1) | reader.read(1));
    const auto& bucket = by_len_[len];
    if (bucket.empty()) continue;
    auto it = std::lower_bound(bucket.begin(), bucket.end(),
                               std::pair<uint16_t, uint8_t>{acc, 0});
    if (it != bucket.end() && it->first == acc) return it->second;
  }
  throw MalformedStreamError("no codeword matches the bit stream");
}

namespace {

// Standard photographic code tables in count-per-length + symbol-order
// form; actual codewords are assigned canonically (shortest first, then
// symbol order, left to right).
struct CanonicalSpec {
  std::array<uint8_t, 17> counts;  // counts[len], len 1..16
  std::vector<uint8_t> symbols;
};

HuffmanTable make_canonical(const CanonicalSpec& spec, bool dc) {
  std::vector<HuffmanTable::Entry> entries;
  uint16_t code = 0;
  size_t k = 0;
  for (int len = 1; len <= 16; ++len) {
    for (int i = 0; i < spec.counts[len]; ++i)
      entries.push_back({spec.symbols.at(k++), {code++, uint8_t(len)}});
    code = uint16_t(code << 1);
  }
  if (k != spec.symbols.size())
    throw InvalidTableError("canonical spec symbol count mismatch");
  return HuffmanTable(std::move(entries), dc);
}

const CanonicalSpec kDcLumaSpec = {
    {0, 0, 1, 5, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0},
    {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}};

const CanonicalSpec kDcChromaSpec = {
    {0, 0, 3, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0},
    {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}};

const CanonicalSpec kAcLumaSpec = {
    {0, 0, 2, 1, 3, 3, 2, 4, 3, 5, 5, 4, 4, 0, 0, 1, 0x7d},
    {0x01, 0x02, 0x03, 0x00, 0x04, 0x11, 0x05, 0x12, 0x21, 0x31, 0x41, 0x06,
     0x13, 0x51, 0x61, 0x07, 0x22, 0x71, 0x14, 0x32, 0x81, 0x91, 0xa1, 0x08,
     0x23, 0x42, 0xb1, 0xc1, 0x15, 0x52, 0xd1, 0xf0, 0x24, 0x33, 0x62, 0x72,
     0x82, 0x09, 0x0a, 0x16, 0x17, 0x18, 0x19, 0x1a, 0x25, 0x26, 0x27, 0x28,
     0x29, 0x2a, 0x34, 0x35, 0x36, 0x37, 0x38, 0x39, 0x3a, 0x43, 0x44, 0x45,
     0x46, 0x47, 0x48, 0x49, 0x4a, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58, 0x59,
     0x5a, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68, 0x69, 0x6a, 0x73, 0x74, 0x75,
     0x76, 0x77, 0x78, 0x79, 0x7a, 0x83, 0x84, 0x85, 0x86, 0x87, 0x88, 0x89,
     0x8a, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97, 0x98, 0x99, 0x9a, 0xa2, 0xa3,
     0xa4, 0xa5, 0xa6, 0xa7, 0xa8, 0xa9, 0xaa, 0xb2, 0xb3, 0xb4, 0xb5, 0xb6,
     0xb7, 0xb8, 0xb9, 0xba, 0xc2, 0xc3, 0xc4, 0xc5, 0xc6, 0xc7, 0xc8, 0xc9,
     0xca, 0xd2, 0xd3, 0xd4, 0xd5, 0xd6, 0xd7, 0xd8, 0xd9, 0xda, 0xe1, 0xe2,
     0xe3, 0xe4, 0xe5, 0xe6, 0xe7, 0xe8, 0xe9, 0xea, 0xf1, 0xf2, 0xf3, 0xf4,
     0xf5, 0xf6, 0xf7, 0xf8, 0xf9, 0xfa}};

const CanonicalSpec kAcChromaSpec = {
    {0, 0, 2, 1, 2, 4, 4, 3, 4, 7, 5, 4, 4, 0, 1, 2, 0x77},
    {0x00, 0x01, 0x02, 0x03, 0x11, 0x04, 0x05, 0x21, 0x31, 0x06, 0x12, 0x41,
     0x51, 0x07, 0x61, 0x71, 0x13, 0x22, 0x32, 0x81, 0x08, 0x14, 0x42, 0x91,
     0xa1, 0xb1, 0xc1, 0x09, 0x23, 0x33, 0x52, 0xf0, 0x15, 0x62, 0x72, 0xd1,
     0x0a, 0x16, 0x24, 0x34, 0xe1, 0x25, 0xf1, 0x17, 0x18, 0x19, 0x1a, 0x26,
     0x27, 0x28, 0x29, 0x2a, 0x35, 0x36, 0x37, 0x38, 0x39, 0x3a, 0x43, 0x44,
     0x45, 0x46, 0x47, 0x48, 0x49, 0x4a, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58,
     0x59, 0x5a, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68, 0x69, 0x6a, 0x73, 0x74,
     0x75, 0x76, 0x77, 0x78, 0x79, 0x7a, 0x82, 0x83, 0x84, 0x85, 0x86, 0x87,
     0x88, 0x89, 0x8a, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97, 0x98, 0x99, 0x9a,
     0xa2, 0xa3, 0xa4, 0xa5, 0xa6, 0xa7, 0xa8, 0xa9, 0xaa, 0xb2, 0xb3, 0xb4,
     0xb5, 0xb6, 0xb7, 0xb8, 0xb9, 0xba, 0xc2, 0xc3, 0xc4, 0xc5, 0xc6, 0xc7,
     0xc8, 0xc9, 0xca, 0xd2, 0xd3, 0xd4, 0xd5, 0xd6, 0xd7, 0xd8, 0xd9, 0xda,
     0xe2, 0xe3, 0xe4, 0xe5, 0xe6, 0xe7, 0xe8, 0xe9, 0xea, 0xf2, 0xf3, 0xf4,
     0xf5, 0xf6, 0xf7, 0xf8, 0xf9, 0xfa}};

}  // namespace

const HuffmanTable& HuffmanTable::standard(TableClass cls) {
  static const HuffmanTable dc_luma = make_canonical(kDcLumaSpec, true);
  static const HuffmanTable ac_luma = make_canonical(kAcLumaSpec, false);
  static const HuffmanTable dc_chroma = make_canonical(kDcChromaSpec, true);
  static const HuffmanTable ac_chroma = make_canonical(kAcChromaSpec, false);
  switch (cls) {
    case TableClass::DcLuma: return dc_luma;
    case TableClass::AcLuma: return ac_luma;
    case TableClass::DcChroma: return dc_chroma;
    case TableClass::AcChroma: return ac_chroma;
  }
  throw InvalidTableError("unknown table class");
}

HuffmanTable HuffmanTable::load(std::istream& in, bool dc) {
  std::vector<Entry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string index_hex, code_bits;
    int len;
    if (!(ls >> index_hex)) continue;  // blank line
    if (!(ls >> len >> code_bits))
      throw InvalidTableError("Huffman table line " + std::to_string(lineno) +
                              ": expected INDEX_HEX LENGTH CODE_BINARY");
    unsigned long index = std::stoul(index_hex, nullptr, 16);
    if (index > 255)
      throw InvalidTableError("Huffman symbol index exceeds one byte");
    if (len < 1 || len > kMaxCodewordBits ||
        code_bits.size() != size_t(len))
      throw InvalidTableError("Huffman table line " + std::to_string(lineno) +
                              ": length does not match code");
    uint16_t code = 0;
    for (char c : code_bits) {
      if (c != '0' && c != '1')
        throw InvalidTableError("Huffman code must be binary digits");
      code = uint16_t((code << 1) | (c == '1'));
    }
    entries.push_back({uint8_t(index), {code, uint8_t(len)}});
  }
  return HuffmanTable(std::move(entries), dc);
}

HuffmanTable HuffmanTable::load_file(const std::string& path, bool dc) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open Huffman table: " + path);
  return load(in, dc);
}

CodedUnit huffman_encode(const RleSymbol& symbol, const HuffmanTable& table) {
  uint8_t index;
  if (table.is_dc()) {
    if (symbol.run != 0)
      throw InvalidSymbolError("DC table cannot code a zero run");
    index = symbol.size;
  } else {
    index = uint8_t((symbol.run << 4) | symbol.size);
  }
  if (uint8_t(category_of(symbol.value)) != symbol.size)
    throw InvalidSymbolError("symbol category does not match its value");
  auto code = table.code_for(index);
  if (!code)
    throw InvalidSymbolError("Huffman table has no codeword for symbol index " +
                             std::to_string(index));
  CodedUnit unit;
  unit.codeword = code->code;
  unit.codeword_len = code->len;
  unit.value_len = symbol.size;
  unit.value_bits = symbol.size ? category_bits(symbol.value) : 0;
  unit.end_of_block = !table.is_dc() && symbol.is_eob();
  return unit;
}

uint8_t huffman_decode(BitReader& reader, const HuffmanTable& table) {
  return table.decode_index(reader);
}

std::vector<CodedUnit> encode_block(const QuantizedBlock& block,
                                    const HuffmanTable& dc,
                                    const HuffmanTable& ac) {
  // The AC alphabet tops out at category 10; the quantizer range allows one
  // value beyond it (-1024, category 11). Fold it onto -1023 rather than
  // failing the whole block over one least significant bit.
  QuantizedBlock folded = block;
  for (size_t k = 1; k < folded.coeffs.size(); ++k)
    if (folded.coeffs[k] == -1024) folded.coeffs[k] = -1023;
  std::vector<RleSymbol> symbols = rle_encode_block(folded);
  std::vector<CodedUnit> out;
  out.reserve(symbols.size());
  for (size_t i = 0; i < symbols.size(); ++i)
    out.push_back(huffman_encode(symbols[i], i == 0 ? dc : ac));
  return out;
}

QuantizedBlock decode_block(BitReader& reader, Channel channel,
                            const HuffmanTable& dc, const HuffmanTable& ac) {
  QuantizedBlock out;
  out.channel = channel;

  int dc_cat = dc.decode_index(reader);
  if (dc_cat > kMaxCategory)
    throw MalformedStreamError("DC category out of range");
  out.coeffs[0] =
      int16_t(decategorize(dc_cat, uint16_t(reader.read(dc_cat))));

  int k = 1;
  while (true) {
    uint8_t index = ac.decode_index(reader);
    if (index == 0x00) break;  // end of block
    int run = index >> 4;
    int cat = index & 0x0F;
    if (cat == 0) {
      if (run != 15)
        throw MalformedStreamError("zero-category AC symbol that is not ZRL");
      k += 16;
      if (k > 64)
        throw MalformedStreamError("zero run overruns the block");
      continue;
    }
    k += run;
    if (k >= 64)
      throw MalformedStreamError("coefficient index overruns the block");
    if (cat > kMaxCategory)
      throw MalformedStreamError("AC category out of range");
    out.coeffs[k] =
        int16_t(decategorize(cat, uint16_t(reader.read(cat))));
    ++k;
  }
  return out;
}

}  // namespace mjstream
