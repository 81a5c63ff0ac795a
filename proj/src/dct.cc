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

#include "semcomm/dct.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace semcomm {
namespace {

// basis[u][x] = alpha(u) * cos((2x + 1) * u * pi / 16)
struct Basis {
  double m[kBlockSize][kBlockSize];
  Basis() {
    for (int u = 0; u < kBlockSize; ++u) {
      const double alpha = u == 0 ? std::sqrt(1.0 / kBlockSize) : std::sqrt(2.0 / kBlockSize);
      for (int x = 0; x < kBlockSize; ++x) {
        m[u][x] = alpha * std::cos((2 * x + 1) * u * std::numbers::pi / (2.0 * kBlockSize));
      }
    }
  }
};

const Basis& basis() {
  static const Basis b;
  return b;
}

constexpr int kZigzag[kCoefficientsPerBlock] = {
     0,  1,  8, 16,  9,  2,  3, 10,
    17, 24, 32, 25, 18, 11,  4,  5,
    12, 19, 26, 33, 40, 48, 41, 34,
    27, 20, 13,  6,  7, 14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36,
    29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46,
    53, 60, 61, 54, 47, 55, 62, 63,
};

struct InverseZigzag {
  int k[kCoefficientsPerBlock];
  constexpr InverseZigzag() : k{} {
    for (int i = 0; i < kCoefficientsPerBlock; ++i) k[kZigzag[i]] = i;
  }
};
constexpr InverseZigzag kInverseZigzag;

}  // namespace

Block8 forward_dct8(const Block8& samples) {
  const auto& c = basis().m;
  Block8 tmp{};
  // rows: tmp[u][y] = sum_x c[u][x] * s[x][y]
  for (int u = 0; u < kBlockSize; ++u) {
    for (int y = 0; y < kBlockSize; ++y) {
      double acc = 0.0;
      for (int x = 0; x < kBlockSize; ++x) acc += c[u][x] * samples[x * kBlockSize + y];
      tmp[u * kBlockSize + y] = acc;
    }
  }
  Block8 out{};
  for (int u = 0; u < kBlockSize; ++u) {
    for (int v = 0; v < kBlockSize; ++v) {
      double acc = 0.0;
      for (int y = 0; y < kBlockSize; ++y) acc += tmp[u * kBlockSize + y] * c[v][y];
      out[u * kBlockSize + v] = acc;
    }
  }
  return out;
}

Block8 inverse_dct8(const Block8& coefficients) {
  const auto& c = basis().m;
  Block8 tmp{};
  for (int x = 0; x < kBlockSize; ++x) {
    for (int v = 0; v < kBlockSize; ++v) {
      double acc = 0.0;
      for (int u = 0; u < kBlockSize; ++u) acc += c[u][x] * coefficients[u * kBlockSize + v];
      tmp[x * kBlockSize + v] = acc;
    }
  }
  Block8 out{};
  for (int x = 0; x < kBlockSize; ++x) {
    for (int y = 0; y < kBlockSize; ++y) {
      double acc = 0.0;
      for (int v = 0; v < kBlockSize; ++v) acc += tmp[x * kBlockSize + v] * c[v][y];
      out[x * kBlockSize + y] = acc;
    }
  }
  return out;
}

GridPosition zigzag_position(int k) {
  const int offset = zigzag_offset(k);
  return {offset / kBlockSize, offset % kBlockSize};
}

int zigzag_offset(int k) {
  if (k < 0 || k >= kCoefficientsPerBlock) {
    throw std::out_of_range("zigzag index out of range: " + std::to_string(k));
  }
  return kZigzag[k];
}

int zigzag_index(int row, int col) {
  if (row < 0 || row >= kBlockSize || col < 0 || col >= kBlockSize) {
    throw std::out_of_range("grid position out of range");
  }
  return kInverseZigzag.k[row * kBlockSize + col];
}

}  // namespace semcomm
