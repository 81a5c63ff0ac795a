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

#include "semcomm/codec.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "semcomm/error.h"
#include "semcomm/mask.h"

namespace semcomm {
namespace {

constexpr double kLevelShift = 128.0;

// BT.601 full-range (JFIF) conversion, written so the inverse is exact.
constexpr double kKr = 0.299;
constexpr double kKb = 0.114;
constexpr double kKg = 1.0 - kKr - kKb;
constexpr double kCbScale = 2.0 * (1.0 - kKb);  // 1.772
constexpr double kCrScale = 2.0 * (1.0 - kKr);  // 1.402

void rgb_to_ycbcr(double r, double g, double b, double* y, double* cb, double* cr) {
  *y = kKr * r + kKg * g + kKb * b;
  *cb = (b - *y) / kCbScale + 128.0;
  *cr = (r - *y) / kCrScale + 128.0;
}

void ycbcr_to_rgb(double y, double cb, double cr, double* r, double* g, double* b) {
  *r = y + kCrScale * (cr - 128.0);
  *b = y + kCbScale * (cb - 128.0);
  *g = (y - kKr * *r - kKb * *b) / kKg;
}

uint8_t to_sample(double v) {
  return static_cast<uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
}

QuantTable table_for(ColorMode mode, int channel) {
  return mode == ColorMode::kYCbCr444 && channel > 0 ? QuantTable::kChroma : QuantTable::kLuma;
}

}  // namespace

std::string_view to_string(ColorMode mode) {
  return mode == ColorMode::kLuma ? "luma" : "ycbcr444";
}

ColorMode parse_color_mode(std::string_view text) {
  if (text == "luma" || text == "gray") return ColorMode::kLuma;
  if (text == "ycbcr444" || text == "ycbcr-444" || text == "ycbcr") return ColorMode::kYCbCr444;
  throw ConfigError("unknown color mode: " + std::string(text));
}

int bit_width(const CoefficientPlane& plane) {
  int width = 0;
  for (int32_t v : plane.values) {
    // Magnitude bits of v (or of ~v for negatives) plus a sign bit.
    const uint32_t m = v < 0 ? static_cast<uint32_t>(~v) : static_cast<uint32_t>(v);
    if (v == 0) continue;
    const int w = (m == 0 ? 0 : 32 - __builtin_clz(m)) + 1;
    width = std::max(width, w);
  }
  return width;
}

TransformedImage transform_image(const PixelImage& img, ColorMode mode) {
  if (img.channels != 1 && img.channels != 3) {
    throw ConfigError("unsupported channel count: " + std::to_string(img.channels));
  }
  if (img.width < 1 || img.height < 1 || img.width > 65535 || img.height > 65535) {
    throw ConfigError("image dimensions out of range");
  }
  if (img.samples.size() != static_cast<size_t>(img.width) * img.height * img.channels) {
    throw ConfigError("sample buffer does not match image dimensions");
  }
  if (img.channels == 1) mode = ColorMode::kLuma;

  TransformedImage out;
  out.width = img.width;
  out.height = img.height;
  out.color_mode = mode;
  out.channels = mode == ColorMode::kLuma ? 1 : 3;

  // Coding-space samples, unpadded.
  const size_t pixels = static_cast<size_t>(img.width) * img.height;
  std::vector<std::vector<double>> space(out.channels, std::vector<double>(pixels));
  for (size_t i = 0; i < pixels; ++i) {
    if (img.channels == 1) {
      space[0][i] = img.samples[i];
      continue;
    }
    double y, cb, cr;
    rgb_to_ycbcr(img.samples[3 * i], img.samples[3 * i + 1], img.samples[3 * i + 2], &y, &cb, &cr);
    space[0][i] = y;
    if (out.channels == 3) {
      space[1][i] = cb;
      space[2][i] = cr;
    }
  }

  const int bx = out.blocks_x();
  const int by = out.blocks_y();
  out.blocks.assign(out.channels, std::vector<Block8>(static_cast<size_t>(bx) * by));
  for (int ch = 0; ch < out.channels; ++ch) {
    for (int row = 0; row < by; ++row) {
      for (int col = 0; col < bx; ++col) {
        Block8 block;
        for (int y = 0; y < kBlockSize; ++y) {
          const int sy = std::min(row * kBlockSize + y, img.height - 1);
          for (int x = 0; x < kBlockSize; ++x) {
            const int sx = std::min(col * kBlockSize + x, img.width - 1);
            block[y * kBlockSize + x] =
                space[ch][static_cast<size_t>(sy) * img.width + sx] - kLevelShift;
          }
        }
        out.blocks[ch][static_cast<size_t>(row) * bx + col] = forward_dct8(block);
      }
    }
  }
  return out;
}

EncodedImage quantize_image(const TransformedImage& transformed, QualityFactor q) {
  EncodedImage enc;
  enc.width = transformed.width;
  enc.height = transformed.height;
  enc.channels = transformed.channels;
  enc.quality = q.value();
  enc.color_mode = transformed.color_mode;
  const int blocks = enc.block_count();
  enc.planes.resize(enc.plane_count());
  for (int k = 0; k < kCoefficientsPerBlock; ++k) {
    for (int ch = 0; ch < enc.channels; ++ch) {
      CoefficientPlane& plane = enc.plane(k, ch);
      plane.zigzag_index = k;
      plane.channel = ch;
      plane.values.resize(blocks);
    }
  }
  for (int ch = 0; ch < enc.channels; ++ch) {
    const QuantMatrix qm = quantization_matrix(q, table_for(enc.color_mode, ch));
    for (int b = 0; b < blocks; ++b) {
      const Block8& coeffs = transformed.blocks[ch][b];
      for (int k = 0; k < kCoefficientsPerBlock; ++k) {
        const int off = zigzag_offset(k);
        enc.plane(k, ch).values[b] = quantize(coeffs[off], qm[off]);
      }
    }
  }
  return enc;
}

EncodedImage encode_image(const PixelImage& img, QualityFactor q, ColorMode mode) {
  return quantize_image(transform_image(img, mode), q);
}

PixelImage reconstruct(const EncodedImage& enc, const ReconstructionMask& mask) {
  if (!mask.matches(enc)) throw ConfigError("reconstruction mask does not match image");
  if (static_cast<int>(enc.planes.size()) != enc.plane_count()) {
    throw ConfigError("encoded image has wrong plane count");
  }
  const int bx = enc.blocks_x();
  const int by = enc.blocks_y();
  const int padded_w = bx * kBlockSize;
  const int padded_h = by * kBlockSize;
  const QualityFactor q(enc.quality);

  std::vector<std::vector<double>> space(
      enc.channels, std::vector<double>(static_cast<size_t>(padded_w) * padded_h));
  for (int ch = 0; ch < enc.channels; ++ch) {
    const QuantMatrix qm = quantization_matrix(q, table_for(enc.color_mode, ch));
    for (int b = 0; b < bx * by; ++b) {
      Block8 coeffs{};
      for (int k = 0; k < kCoefficientsPerBlock; ++k) {
        if (!mask.present(ch, k, b)) continue;
        const int off = zigzag_offset(k);
        coeffs[off] = static_cast<double>(enc.plane(k, ch).values[b]) * qm[off];
      }
      const Block8 samples = inverse_dct8(coeffs);
      const int x0 = (b % bx) * kBlockSize;
      const int y0 = (b / bx) * kBlockSize;
      for (int y = 0; y < kBlockSize; ++y) {
        for (int x = 0; x < kBlockSize; ++x) {
          space[ch][static_cast<size_t>(y0 + y) * padded_w + x0 + x] =
              samples[y * kBlockSize + x] + kLevelShift;
        }
      }
    }
  }

  PixelImage out(enc.width, enc.height, enc.channels);
  for (int y = 0; y < enc.height; ++y) {
    for (int x = 0; x < enc.width; ++x) {
      const size_t i = static_cast<size_t>(y) * padded_w + x;
      if (enc.channels == 1) {
        out.at(x, y, 0) = to_sample(space[0][i]);
        continue;
      }
      double r, g, b;
      ycbcr_to_rgb(space[0][i], space[1][i], space[2][i], &r, &g, &b);
      out.at(x, y, 0) = to_sample(r);
      out.at(x, y, 1) = to_sample(g);
      out.at(x, y, 2) = to_sample(b);
    }
  }
  return out;
}

PixelImage reconstruct(const EncodedImage& enc) {
  return reconstruct(enc, ReconstructionMask::full(enc));
}

PixelImage reference_image(const PixelImage& img, ColorMode mode) {
  if (mode != ColorMode::kLuma || img.channels != 3) return img;
  PixelImage gray(img.width, img.height, 1);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double luma, cb, cr;
      rgb_to_ycbcr(img.at(x, y, 0), img.at(x, y, 1), img.at(x, y, 2), &luma, &cb, &cr);
      gray.at(x, y, 0) = to_sample(luma);
    }
  }
  return gray;
}

double coefficient_mse(const TransformedImage& original, const EncodedImage& enc,
                       const ReconstructionMask& mask) {
  if (!mask.matches(enc) || original.channels != enc.channels ||
      original.width != enc.width || original.height != enc.height) {
    throw ConfigError("coefficient_mse: shapes differ");
  }
  const QualityFactor q(enc.quality);
  const int blocks = enc.block_count();
  double acc = 0.0;
  for (int ch = 0; ch < enc.channels; ++ch) {
    const QuantMatrix qm = quantization_matrix(q, table_for(enc.color_mode, ch));
    for (int b = 0; b < blocks; ++b) {
      const Block8& ref = original.blocks[ch][b];
      for (int k = 0; k < kCoefficientsPerBlock; ++k) {
        const int off = zigzag_offset(k);
        const double got =
            mask.present(ch, k, b) ? static_cast<double>(enc.plane(k, ch).values[b]) * qm[off] : 0.0;
        const double d = ref[off] - got;
        acc += d * d;
      }
    }
  }
  return acc / (static_cast<double>(enc.channels) * blocks * kCoefficientsPerBlock);
}

}  // namespace semcomm
