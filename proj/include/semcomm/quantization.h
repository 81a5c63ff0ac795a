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

#ifndef SEMCOMM_QUANTIZATION_H_
#define SEMCOMM_QUANTIZATION_H_

#include <array>
#include <cstdint>

namespace semcomm {

// JPEG quality factor in [1, 100].
class QualityFactor {
 public:
  // Throws ConfigError when q is out of range.
  explicit QualityFactor(int q);

  int value() const { return q_; }

  friend auto operator<=>(const QualityFactor&, const QualityFactor&) = default;

 private:
  int q_;
};

enum class QuantTable { kLuma, kChroma };

// Row-major step sizes.
using QuantMatrix = std::array<int, 64>;

// Annex K base tables, row-major.
extern const QuantMatrix kBaseLumaTable;
extern const QuantMatrix kBaseChromaTable;

// IJG scaling: s = 5000/Q for Q < 50, else 200 - 2Q;
// entry = clamp((base * s + 50) / 100, 1, 255).
QuantMatrix quantization_matrix(QualityFactor q, QuantTable table);

// round(coefficient / step), ties away from zero.
int32_t quantize(double coefficient, int step);

}  // namespace semcomm

#endif  // SEMCOMM_QUANTIZATION_H_
