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

#ifndef SEMCOMM_DCT_H_
#define SEMCOMM_DCT_H_

#include <array>

namespace semcomm {

inline constexpr int kBlockSize = 8;
inline constexpr int kCoefficientsPerBlock = 64;

// 8x8 block of reals, row-major (index = row * 8 + col).
using Block8 = std::array<double, kCoefficientsPerBlock>;

// Orthonormal 2-D DCT-II. Input is expected to be level-shifted by -128.
Block8 forward_dct8(const Block8& samples);

// Exact inverse of forward_dct8 (DCT-III with the same normalization).
Block8 inverse_dct8(const Block8& coefficients);

struct GridPosition {
  int row = 0;
  int col = 0;
  friend bool operator==(const GridPosition&, const GridPosition&) = default;
};

// Standard JPEG zigzag scan: k = 0 is DC, k = 63 is (7, 7).
// Throws std::out_of_range for k outside [0, 63].
GridPosition zigzag_position(int k);

// Inverse of zigzag_position.
int zigzag_index(int row, int col);

// Row-major offset (row * 8 + col) of zigzag position k.
int zigzag_offset(int k);

}  // namespace semcomm

#endif  // SEMCOMM_DCT_H_
