// Copyright 2026 The semcomm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEMCOMM_IMAGE_IO_H_
#define SEMCOMM_IMAGE_IO_H_

#include <filesystem>

#include "semcomm/image.h"

namespace semcomm {

// Reads a PNG or uncompressed BMP, detected by file signature. Alpha is
// dropped; palette and 16-bit PNGs are expanded to 8-bit gray or RGB.
PixelImage read_image(const std::filesystem::path& path);

PixelImage read_png(const std::filesystem::path& path);
PixelImage read_bmp(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, const PixelImage& img);
// 24-bit BMP (gray images are written as RGB triplets).
void write_bmp(const std::filesystem::path& path, const PixelImage& img);

}  // namespace semcomm

#endif  // SEMCOMM_IMAGE_IO_H_
