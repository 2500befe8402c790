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

// The shipped table files in tables/ must stay interchangeable with the
// built-in tables: loading them has to reproduce the embedded set exactly.

#include <string>

#include "doctest.h"
#include "mjstream/entropy.hpp"
#include "mjstream/quant.hpp"

using namespace mjstream;

namespace {
std::string tables_dir() { return MJSTREAM_TABLES_DIR; }
}  // namespace

TEST_CASE("shipped quantization files equal the embedded tables") {
  struct Case {
    const char* file;
    ChannelClass cls;
  } cases[] = {{"/quant_luma.txt", ChannelClass::Luma},
               {"/quant_chroma.txt", ChannelClass::Chroma}};
  for (const Case& c : cases) {
    INFO("file ", c.file);
    QuantTable loaded = QuantTable::load_file(tables_dir() + c.file, c.cls);
    const QuantTable& embedded = QuantTable::standard(c.cls);
    CHECK(loaded.divisors() == embedded.divisors());
    CHECK(loaded.channel_class() == embedded.channel_class());
  }
}

TEST_CASE("shipped Huffman files equal the embedded tables") {
  struct Case {
    const char* file;
    TableClass cls;
    bool dc;
  } cases[] = {{"/dc_luma.txt", TableClass::DcLuma, true},
               {"/ac_luma.txt", TableClass::AcLuma, false},
               {"/dc_chroma.txt", TableClass::DcChroma, true},
               {"/ac_chroma.txt", TableClass::AcChroma, false}};
  for (const Case& c : cases) {
    INFO("file ", c.file);
    HuffmanTable loaded = HuffmanTable::load_file(tables_dir() + c.file, c.dc);
    const HuffmanTable& embedded = HuffmanTable::standard(c.cls);
    CHECK(loaded.is_dc() == embedded.is_dc());
    REQUIRE(loaded.entries().size() == embedded.entries().size());
    for (size_t i = 0; i < loaded.entries().size(); ++i) {
      INFO("entry ", i);
      CHECK(loaded.entries()[i].index == embedded.entries()[i].index);
      CHECK(loaded.entries()[i].code.code == embedded.entries()[i].code.code);
      CHECK(loaded.entries()[i].code.len == embedded.entries()[i].code.len);
    }
  }
}
