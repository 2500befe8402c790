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

#include <stdexcept>
#include <string>

namespace mjstream {

// Base class for every error thrown by this library. Catching mjstream::Error
// is sufficient to contain any failure originating here.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Frame geometry the pipeline cannot carry: zero-sized planes, or a padded
// plane whose superblock layout does not fit the packet position space.
class InvalidGeometryError : public Error {
 public:
  using Error::Error;
};

// Entropy-coded input that cannot be decoded: unknown codeword, exhausted
// bit stream, coefficient overrun past the end of a block.
class MalformedStreamError : public Error {
 public:
  using Error::Error;
};

// A quantization or Huffman table that fails its validity checks.
class InvalidTableError : public Error {
 public:
  using Error::Error;
};

// A symbol that the selected Huffman table cannot represent.
class InvalidSymbolError : public Error {
 public:
  using Error::Error;
};

// File and socket I/O failures.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mjstream
