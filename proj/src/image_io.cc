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

#include "semcomm/image_io.h"

#include <png.h>

#include <array>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "semcomm/error.h"

namespace semcomm {
namespace {

struct FileCloser {
  void operator()(FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw FormatError("cannot open " + path.string());
  return f;
}

std::vector<uint8_t> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

uint32_t le32(const uint8_t* p) {
  return p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<uint32_t>(p[3]) << 24);
}
uint16_t le16(const uint8_t* p) { return static_cast<uint16_t>(p[0] | (p[1] << 8)); }

void put_le32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}
void put_le16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

void png_warning_fn(png_structp, png_const_charp) {}

}  // namespace

PixelImage read_image(const std::filesystem::path& path) {
  std::array<uint8_t, 8> sig{};
  {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    in.read(reinterpret_cast<char*>(sig.data()), sig.size());
    if (in.gcount() < 2) throw FormatError("file too short: " + path.string());
  }
  if (png_sig_cmp(sig.data(), 0, sig.size()) == 0) return read_png(path);
  if (sig[0] == 'B' && sig[1] == 'M') return read_bmp(path);
  throw FormatError("unsupported image format: " + path.string());
}

// libpng reports errors by longjmp; keep C++ objects with destructors out of
// the frames it unwinds.
namespace {

struct PngReadState {
  PixelImage img;
  std::vector<png_bytep> rows;
  char error[256] = {};
};

void png_store_error(png_structp png, png_const_charp msg) {
  auto* state = static_cast<PngReadState*>(png_get_error_ptr(png));
  std::snprintf(state->error, sizeof(state->error), "%s", msg);
  png_longjmp(png, 1);
}

bool png_read_into(FILE* f, PngReadState* state) {
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, state, png_store_error, png_warning_fn);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_init_io(png, f);
  png_read_info(png, info);

  const png_byte color = png_get_color_type(png, info);
  if (png_get_bit_depth(png, info) == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);

  const int channels = png_get_channels(png, info);
  if (channels != 1 && channels != 3) {
    std::snprintf(state->error, sizeof(state->error), "unsupported channel layout");
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  state->img = PixelImage(static_cast<int>(png_get_image_width(png, info)),
                          static_cast<int>(png_get_image_height(png, info)), channels);
  state->rows.resize(state->img.height);
  for (int y = 0; y < state->img.height; ++y) {
    state->rows[y] = &state->img.samples[state->img.index(0, y, 0)];
  }
  png_read_image(png, state->rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

bool png_write_from(FILE* f, const PixelImage& img, char* error, size_t error_size) {
  struct Ctx {
    char* error;
    size_t size;
  } ctx{error, error_size};
  png_structp png = png_create_write_struct(
      PNG_LIBPNG_VER_STRING, &ctx,
      [](png_structp p, png_const_charp msg) {
        auto* c = static_cast<Ctx*>(png_get_error_ptr(p));
        std::snprintf(c->error, c->size, "%s", msg);
        png_longjmp(p, 1);
      },
      png_warning_fn);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_init_io(png, f);
  png_set_IHDR(png, info, img.width, img.height, 8,
               img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < img.height; ++y) {
    png_write_row(png, const_cast<png_bytep>(&img.samples[img.index(0, y, 0)]));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

}  // namespace

PixelImage read_png(const std::filesystem::path& path) {
  FilePtr f = open_file(path, "rb");
  PngReadState state;
  if (!png_read_into(f.get(), &state)) {
    throw FormatError("png: " + path.string() + ": " + state.error);
  }
  return std::move(state.img);
}

void write_png(const std::filesystem::path& path, const PixelImage& img) {
  if (img.channels != 1 && img.channels != 3) throw ConfigError("png: unsupported channel count");
  FilePtr f = open_file(path, "wb");
  char error[256] = {};
  if (!png_write_from(f.get(), img, error, sizeof(error))) {
    throw FormatError("png: " + path.string() + ": " + error);
  }
}

PixelImage read_bmp(const std::filesystem::path& path) {
  const std::vector<uint8_t> data = slurp(path);
  if (data.size() < 54 || data[0] != 'B' || data[1] != 'M') throw FormatError("bmp: bad header");
  const uint32_t pixel_offset = le32(&data[10]);
  const uint32_t info_size = le32(&data[14]);
  if (info_size < 40) throw FormatError("bmp: unsupported info header");
  const int32_t width = static_cast<int32_t>(le32(&data[18]));
  int32_t height = static_cast<int32_t>(le32(&data[22]));
  const uint16_t bpp = le16(&data[28]);
  const uint32_t compression = le32(&data[30]);
  if (compression != 0) throw FormatError("bmp: compressed files are not supported");
  if (bpp != 8 && bpp != 24 && bpp != 32) throw FormatError("bmp: unsupported bit depth");
  const bool top_down = height < 0;
  if (top_down) height = -height;
  if (width <= 0 || height <= 0) throw FormatError("bmp: bad dimensions");

  std::vector<std::array<uint8_t, 3>> palette;
  bool gray_palette = true;
  if (bpp == 8) {
    uint32_t colors = le32(&data[46]);
    if (colors == 0) colors = 256;
    const size_t base = 14 + info_size;
    if (base + 4 * colors > data.size()) throw FormatError("bmp: truncated palette");
    for (uint32_t i = 0; i < colors; ++i) {
      const uint8_t* p = &data[base + 4 * i];
      palette.push_back({p[2], p[1], p[0]});
      gray_palette &= p[0] == p[1] && p[1] == p[2];
    }
  }

  const size_t stride = ((static_cast<size_t>(width) * bpp + 31) / 32) * 4;
  if (pixel_offset + stride * height > data.size()) throw FormatError("bmp: truncated pixels");
  const int channels = bpp == 8 && gray_palette ? 1 : 3;
  PixelImage img(width, height, channels);
  for (int y = 0; y < height; ++y) {
    const int src_row = top_down ? y : height - 1 - y;
    const uint8_t* row = &data[pixel_offset + stride * src_row];
    for (int x = 0; x < width; ++x) {
      if (bpp == 8) {
        const uint8_t idx = row[x];
        if (idx >= palette.size()) throw FormatError("bmp: palette index out of range");
        for (int c = 0; c < channels; ++c) img.at(x, y, c) = palette[idx][c];
      } else {
        const uint8_t* px = row + x * (bpp / 8);
        img.at(x, y, 0) = px[2];
        img.at(x, y, 1) = px[1];
        img.at(x, y, 2) = px[0];
      }
    }
  }
  return img;
}

void write_bmp(const std::filesystem::path& path, const PixelImage& img) {
  if (img.channels != 1 && img.channels != 3) throw ConfigError("bmp: unsupported channel count");
  const size_t stride = ((static_cast<size_t>(img.width) * 24 + 31) / 32) * 4;
  const uint32_t pixel_bytes = static_cast<uint32_t>(stride * img.height);
  std::vector<uint8_t> out;
  out.reserve(54 + pixel_bytes);
  out.push_back('B');
  out.push_back('M');
  put_le32(out, 54 + pixel_bytes);
  put_le32(out, 0);
  put_le32(out, 54);
  put_le32(out, 40);
  put_le32(out, static_cast<uint32_t>(img.width));
  put_le32(out, static_cast<uint32_t>(img.height));
  put_le16(out, 1);
  put_le16(out, 24);
  put_le32(out, 0);
  put_le32(out, pixel_bytes);
  put_le32(out, 2835);
  put_le32(out, 2835);
  put_le32(out, 0);
  put_le32(out, 0);
  for (int y = img.height - 1; y >= 0; --y) {
    for (int x = 0; x < img.width; ++x) {
      const uint8_t r = img.at(x, y, 0);
      const uint8_t g = img.channels == 3 ? img.at(x, y, 1) : r;
      const uint8_t b = img.channels == 3 ? img.at(x, y, 2) : r;
      out.push_back(b);
      out.push_back(g);
      out.push_back(r);
    }
    for (size_t pad = static_cast<size_t>(img.width) * 3; pad < stride; ++pad) out.push_back(0);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open " + path.string());
  f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
}

}  // namespace semcomm
