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

#ifndef SEMCOMM_CODEC_H_
#define SEMCOMM_CODEC_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "semcomm/dct.h"
#include "semcomm/image.h"
#include "semcomm/quantization.h"

namespace semcomm {

class ReconstructionMask;

enum class ColorMode : uint8_t {
  kLuma = 0,       // single Y channel
  kYCbCr444 = 1,   // BT.601 full range, no subsampling
};

std::string_view to_string(ColorMode mode);
// Accepts "luma" and "ycbcr444" (also "ycbcr-444"). Throws ConfigError.
ColorMode parse_color_mode(std::string_view text);

// All k-th zigzag coefficients of one channel, one value per block in
// block-raster order.
struct CoefficientPlane {
  int zigzag_index = 0;
  int channel = 0;
  std::vector<int32_t> values;

  friend bool operator==(const CoefficientPlane&, const CoefficientPlane&) = default;
};

// Minimal two's-complement width holding every value; 0 for an all-zero plane.
int bit_width(const CoefficientPlane& plane);

// Quantized, plane-major representation of an image. Planes are stored in
// transmission order: zigzag index outer, channel inner, so the plane for
// (k, ch) lives at k * channels + ch.
struct EncodedImage {
  int width = 0;
  int height = 0;
  int channels = 0;
  int quality = 0;
  ColorMode color_mode = ColorMode::kLuma;
  std::vector<CoefficientPlane> planes;

  int blocks_x() const { return (width + kBlockSize - 1) / kBlockSize; }
  int blocks_y() const { return (height + kBlockSize - 1) / kBlockSize; }
  int block_count() const { return blocks_x() * blocks_y(); }
  int plane_count() const { return kCoefficientsPerBlock * channels; }

  static int plane_slot(int k, int channel, int channels) {
    return k * channels + channel;
  }
  const CoefficientPlane& plane(int k, int channel) const {
    return planes[plane_slot(k, channel, channels)];
  }
  CoefficientPlane& plane(int k, int channel) {
    return planes[plane_slot(k, channel, channels)];
  }

  friend bool operator==(const EncodedImage&, const EncodedImage&) = default;
};

// Unquantized block DCT of an image in its coding color space. Lets callers
// re-quantize at several quality factors without repeating the transform.
struct TransformedImage {
  int width = 0;
  int height = 0;
  int channels = 0;
  ColorMode color_mode = ColorMode::kLuma;
  // blocks[ch][block] holds row-major DCT coefficients.
  std::vector<std::vector<Block8>> blocks;

  int blocks_x() const { return (width + kBlockSize - 1) / kBlockSize; }
  int blocks_y() const { return (height + kBlockSize - 1) / kBlockSize; }
};

// Pads by edge replication, converts color, level-shifts and transforms.
// Gray inputs always use ColorMode::kLuma. Throws ConfigError for channel
// counts other than 1 or 3 or dimensions outside [1, 65535].
TransformedImage transform_image(const PixelImage& img, ColorMode mode);

EncodedImage quantize_image(const TransformedImage& transformed, QualityFactor q);

EncodedImage encode_image(const PixelImage& img, QualityFactor q, ColorMode mode);

// Missing coefficients are zero. Output has enc.channels channels (RGB for
// kYCbCr444, gray for kLuma) and the original, unpadded size.
// Throws ConfigError if the mask shape does not match.
PixelImage reconstruct(const EncodedImage& enc, const ReconstructionMask& mask);

// Reconstruction with every coefficient present.
PixelImage reconstruct(const EncodedImage& enc);

// The image a reconstruction should be compared against: the input itself,
// or its rounded luma when a color image is coded in kLuma mode.
PixelImage reference_image(const PixelImage& img, ColorMode mode);

// Mean squared error between the unquantized DCT coefficients of `original`
// and the masked, dequantized coefficients of `enc`, over every coefficient
// of every channel. By orthonormality this is the pixel-domain MSE of the
// unclamped reconstruction in the coding color space.
double coefficient_mse(const TransformedImage& original, const EncodedImage& enc,
                       const ReconstructionMask& mask);

}  // namespace semcomm

#endif  // SEMCOMM_CODEC_H_
