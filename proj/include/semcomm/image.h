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

#ifndef SEMCOMM_IMAGE_H_
#define SEMCOMM_IMAGE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace semcomm {

// 8-bit interleaved image, row-major. `channels` is 1 (gray) or 3 (RGB).
struct PixelImage {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<uint8_t> samples;

  PixelImage() = default;
  PixelImage(int w, int h, int c, uint8_t fill = 0)
      : width(w), height(h), channels(c),
        samples(static_cast<size_t>(w) * h * c, fill) {}

  size_t index(int x, int y, int c) const {
    return (static_cast<size_t>(y) * width + x) * channels + c;
  }
  uint8_t& at(int x, int y, int c) { return samples[index(x, y, c)]; }
  uint8_t at(int x, int y, int c) const { return samples[index(x, y, c)]; }

  bool empty() const { return samples.empty(); }

  friend bool operator==(const PixelImage&, const PixelImage&) = default;
};

// Mean squared error over all samples. Throws ConfigError on shape mismatch.
double mse(const PixelImage& a, const PixelImage& b);

// Peak signal-to-noise ratio in dB for 8-bit data; +inf when identical.
double psnr(const PixelImage& a, const PixelImage& b);

}  // namespace semcomm

#endif  // SEMCOMM_IMAGE_H_
