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

// Capture files hold raw wire frames for offline work.
//
// Binary format (.cap): per frame, a 4-byte little-endian length followed
// by that many frame bytes. No file header; an empty file is an empty
// capture.
//
// Hex text format (.csv/.txt): one frame per line as a hex string; an
// optional leading index column ("N,<hex>") is accepted and ignored, commas
// and whitespace inside the hex are skipped. This is the interchange format
// for frames exported from packet sniffers.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mjstream/error.hpp"

namespace mjstream {

using FrameBytes = std::vector<uint8_t>;

class CaptureWriter {
 public:
  explicit CaptureWriter(const std::string& path);
  ~CaptureWriter();
  CaptureWriter(const CaptureWriter&) = delete;
  CaptureWriter& operator=(const CaptureWriter&) = delete;

  void write(const FrameBytes& frame);
  void close();
  size_t frames_written() const { return count_; }

 private:
  struct Impl;
  Impl* impl_;
  size_t count_ = 0;
};

std::vector<FrameBytes> read_capture(const std::string& path);
void write_capture(const std::string& path,
                   const std::vector<FrameBytes>& frames);

std::vector<FrameBytes> read_hex_frames(const std::string& path);
void write_hex_frames(const std::string& path,
                      const std::vector<FrameBytes>& frames);

// Dispatches on extension: .csv/.txt/.hex read as hex text, everything else
// as binary capture.
std::vector<FrameBytes> read_frames_auto(const std::string& path);

}  // namespace mjstream
