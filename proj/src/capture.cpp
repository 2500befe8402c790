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

#include "mjstream/capture.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace mjstream {

namespace {

bool has_ext(const std::string& path, std::string_view ext) {
  if (path.size() < ext.size()) return false;
  return std::equal(ext.rbegin(), ext.rend(), path.rbegin(),
                    [](char a, char b) { return a == std::tolower(b); });
}

}  // namespace

struct CaptureWriter::Impl {
  std::ofstream out;
};

CaptureWriter::CaptureWriter(const std::string& path)
    : impl_(new Impl{std::ofstream(path, std::ios::binary)}) {
  if (!impl_->out) {
    delete impl_;
    impl_ = nullptr;
    throw IoError("cannot open capture for writing: " + path);
  }
}

CaptureWriter::~CaptureWriter() { delete impl_; }

void CaptureWriter::write(const FrameBytes& frame) {
  if (!impl_) throw IoError("capture writer is closed");
  uint32_t len = uint32_t(frame.size());
  char hdr[4] = {char(len), char(len >> 8), char(len >> 16), char(len >> 24)};
  impl_->out.write(hdr, 4);
  impl_->out.write(reinterpret_cast<const char*>(frame.data()),
                   std::streamsize(frame.size()));
  if (!impl_->out) throw IoError("capture write failed");
  ++count_;
}

void CaptureWriter::close() {
  if (impl_) {
    impl_->out.close();
    delete impl_;
    impl_ = nullptr;
  }
}

std::vector<FrameBytes> read_capture(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open capture: " + path);
  std::vector<FrameBytes> frames;
  while (true) {
    unsigned char hdr[4];
    in.read(reinterpret_cast<char*>(hdr), 4);
    if (in.gcount() == 0 && in.eof()) break;
    if (in.gcount() != 4) throw IoError("truncated capture length prefix");
    uint32_t len = uint32_t(hdr[0]) | uint32_t(hdr[1]) << 8 |
                   uint32_t(hdr[2]) << 16 | uint32_t(hdr[3]) << 24;
    if (len > (1u << 20)) throw IoError("capture frame length implausible");
    FrameBytes frame(len);
    in.read(reinterpret_cast<char*>(frame.data()), std::streamsize(len));
    if (in.gcount() != std::streamsize(len))
      throw IoError("truncated capture frame");
    frames.push_back(std::move(frame));
  }
  return frames;
}

void write_capture(const std::string& path,
                   const std::vector<FrameBytes>& frames) {
  CaptureWriter writer(path);
  for (const FrameBytes& f : frames) writer.write(f);
}

std::vector<FrameBytes> read_hex_frames(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open hex frame file: " + path);
  std::vector<FrameBytes> frames;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // Optional leading columns ("N,<hex>"): the hex run is whatever follows
    // the last comma.
    auto comma = line.find_last_of(',');
    std::string_view hex(line);
    if (comma != std::string::npos) hex = hex.substr(comma + 1);

    FrameBytes frame;
    int hi = -1;
    for (char c : hex) {
      if (std::isspace(uint8_t(c))) continue;
      int v;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
      else throw IoError("hex frame file line " + std::to_string(lineno) +
                         ": invalid character");
      if (hi < 0) {
        hi = v;
      } else {
        frame.push_back(uint8_t(hi << 4 | v));
        hi = -1;
      }
    }
    if (hi >= 0)
      throw IoError("hex frame file line " + std::to_string(lineno) +
                    ": odd number of hex digits");
    if (!frame.empty()) frames.push_back(std::move(frame));
  }
  return frames;
}

void write_hex_frames(const std::string& path,
                      const std::vector<FrameBytes>& frames) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open hex frame file for writing: " + path);
  static const char* digits = "0123456789abcdef";
  for (const FrameBytes& f : frames) {
    std::string line;
    line.reserve(f.size() * 2 + 1);
    for (uint8_t b : f) {
      line.push_back(digits[b >> 4]);
      line.push_back(digits[b & 0xF]);
    }
    line.push_back('\n');
    out << line;
  }
  if (!out) throw IoError("hex frame write failed");
}

std::vector<FrameBytes> read_frames_auto(const std::string& path) {
  if (has_ext(path, ".csv") || has_ext(path, ".txt") || has_ext(path, ".hex"))
    return read_hex_frames(path);
  return read_capture(path);
}

}  // namespace mjstream
