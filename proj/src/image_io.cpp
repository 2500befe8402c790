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

#include "mjstream/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>

namespace mjstream {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

bool has_ext(const std::string& path, std::string_view ext) {
  if (path.size() < ext.size()) return false;
  return std::equal(ext.rbegin(), ext.rend(), path.rbegin(),
                    [](char a, char b) { return a == std::tolower(b); });
}

}  // namespace

RgbFrame read_png(const std::string& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw IoError("cannot open image: " + path);

  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("png reader allocation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("png info allocation failed");
  }
  std::vector<png_bytep> rows;
  RgbFrame out;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("png decode failed: " + path);
  }
  png_init_io(png, fp.get());
  png_read_info(png, info);

  // Normalize every input variant to 8-bit RGB.
  png_byte color = png_get_color_type(png, info);
  png_byte depth = png_get_bit_depth(png, info);
  if (depth == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8)
    png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA)
    png_set_gray_to_rgb(png);
  if (color & PNG_COLOR_MASK_ALPHA ||
      png_get_valid(png, info, PNG_INFO_tRNS))
    png_set_strip_alpha(png);
  png_read_update_info(png, info);

  out.width = int(png_get_image_width(png, info));
  out.height = int(png_get_image_height(png, info));
  out.pixels.resize(size_t(out.width) * out.height * 3);
  rows.resize(size_t(out.height));
  for (int y = 0; y < out.height; ++y)
    rows[size_t(y)] = out.pixels.data() + size_t(y) * out.width * 3;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

void write_png(const std::string& path, const RgbFrame& frame) {
  if (!frame.valid()) throw IoError("cannot write an invalid frame");
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw IoError("cannot open image for writing: " + path);

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            nullptr, nullptr);
  if (!png) throw IoError("png writer allocation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("png info allocation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("png encode failed: " + path);
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, png_uint_32(frame.width), png_uint_32(frame.height),
               8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < frame.height; ++y)
    png_write_row(png, const_cast<png_bytep>(frame.at(0, y)));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

RgbFrame read_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image: " + path);
  std::string magic;
  in >> magic;
  if (magic != "P6") throw IoError("not a binary PPM (P6): " + path);

  auto next_int = [&]() {
    // Skip whitespace and '#' comments between header fields.
    while (true) {
      int c = in.peek();
      if (c == '#') {
        std::string dummy;
        std::getline(in, dummy);
      } else if (std::isspace(c)) {
        in.get();
      } else {
        break;
      }
    }
    int v;
    if (!(in >> v)) throw IoError("bad PPM header: " + path);
    return v;
  };
  int w = next_int(), h = next_int(), maxval = next_int();
  if (w <= 0 || h <= 0 || maxval != 255)
    throw IoError("unsupported PPM geometry or depth: " + path);
  in.get();  // single whitespace byte after maxval

  RgbFrame out;
  out.width = w;
  out.height = h;
  out.pixels.resize(size_t(w) * h * 3);
  in.read(reinterpret_cast<char*>(out.pixels.data()),
          std::streamsize(out.pixels.size()));
  if (in.gcount() != std::streamsize(out.pixels.size()))
    throw IoError("truncated PPM pixel data: " + path);
  return out;
}

void write_ppm(const std::string& path, const RgbFrame& frame) {
  if (!frame.valid()) throw IoError("cannot write an invalid frame");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open image for writing: " + path);
  out << "P6\n" << frame.width << ' ' << frame.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(frame.pixels.data()),
            std::streamsize(frame.pixels.size()));
  if (!out) throw IoError("PPM write failed: " + path);
}

RgbFrame read_raw_rgb24(const std::string& path, int width, int height) {
  if (width <= 0 || height <= 0)
    throw IoError("raw RGB24 input needs an explicit geometry");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image: " + path);
  RgbFrame out;
  out.width = width;
  out.height = height;
  out.pixels.resize(size_t(width) * height * 3);
  in.read(reinterpret_cast<char*>(out.pixels.data()),
          std::streamsize(out.pixels.size()));
  if (in.gcount() != std::streamsize(out.pixels.size()))
    throw IoError("raw RGB24 file shorter than geometry: " + path);
  return out;
}

void write_raw_rgb24(const std::string& path, const RgbFrame& frame) {
  if (!frame.valid()) throw IoError("cannot write an invalid frame");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open image for writing: " + path);
  out.write(reinterpret_cast<const char*>(frame.pixels.data()),
            std::streamsize(frame.pixels.size()));
  if (!out) throw IoError("raw RGB24 write failed: " + path);
}

RgbFrame read_image(const std::string& path, int width, int height) {
  if (has_ext(path, ".png")) return read_png(path);
  if (has_ext(path, ".ppm")) return read_ppm(path);
  if (has_ext(path, ".rgb24") || has_ext(path, ".raw") || has_ext(path, ".rgb"))
    return read_raw_rgb24(path, width, height);
  throw IoError("unrecognized image extension: " + path);
}

void write_image(const std::string& path, const RgbFrame& frame) {
  if (has_ext(path, ".png")) return write_png(path, frame);
  if (has_ext(path, ".ppm")) return write_ppm(path, frame);
  if (has_ext(path, ".rgb24") || has_ext(path, ".raw") || has_ext(path, ".rgb"))
    return write_raw_rgb24(path, frame);
  throw IoError("unrecognized image extension: " + path);
}

double psnr(const RgbFrame& a, const RgbFrame& b) {
  if (a.width != b.width || a.height != b.height)
    throw Error("PSNR images must share a geometry");
  if (!a.valid() || !b.valid()) throw Error("PSNR needs valid frames");
  double sse = 0;
  for (size_t i = 0; i < a.pixels.size(); ++i) {
    double d = double(a.pixels[i]) - double(b.pixels[i]);
    sse += d * d;
  }
  if (sse == 0) return std::numeric_limits<double>::infinity();
  double mse = sse / double(a.pixels.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace mjstream
