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

// Image file I/O for the tools: PNG (via libpng), binary PPM (P6), and
// headerless raw RGB24 (geometry supplied by the caller). Kept out of the
// codec core so the core has no image-library dependency.

#pragma once

#include <string>

#include "mjstream/frame.hpp"

namespace mjstream {

RgbFrame read_png(const std::string& path);
void write_png(const std::string& path, const RgbFrame& frame);

RgbFrame read_ppm(const std::string& path);
void write_ppm(const std::string& path, const RgbFrame& frame);

RgbFrame read_raw_rgb24(const std::string& path, int width, int height);
void write_raw_rgb24(const std::string& path, const RgbFrame& frame);

// Dispatches on extension (.png, .ppm, .rgb24/.raw/.rgb). Raw needs a
// geometry; pass width/height <= 0 to forbid raw.
RgbFrame read_image(const std::string& path, int width = 0, int height = 0);
void write_image(const std::string& path, const RgbFrame& frame);

// Peak signal-to-noise ratio over all RGB bytes; returns +inf for identical
// images, throws on geometry mismatch.
double psnr(const RgbFrame& a, const RgbFrame& b);

}  // namespace mjstream
