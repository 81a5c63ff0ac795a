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

#include "semcomm/quantization.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "semcomm/error.h"

namespace semcomm {

const QuantMatrix kBaseLumaTable = {
    16, 11, 10, 16,  24,  40,  51,  61,
    12, 12, 14, 19,  26,  58,  60,  55,
    14, 13, 16, 24,  40,  57,  69,  56,
    14, 17, 22, 29,  51,  87,  80,  62,
    18, 22, 37, 56,  68, 109, 103,  77,
    24, 35, 55, 64,  81, 104, 113,  92,
    49, 64, 78, 87, 103, 121, 120, 101,
    72, 92, 95, 98, 112, 100, 103,  99,
};

const QuantMatrix kBaseChromaTable = {
    17, 18, 24, 47, 99, 99, 99, 99,
    18, 21, 26, 66, 99, 99, 99, 99,
    24, 26, 56, 99, 99, 99, 99, 99,
    47, 66, 99, 99, 99, 99, 99, 99,
    99, 99, 99, 99, 99, 99, 99, 99,
    99, 99, 99, 99, 99, 99, 99, 99,
    99, 99, 99, 99, 99, 99, 99, 99,
    99, 99, 99, 99, 99, 99, 99, 99,
};

QualityFactor::QualityFactor(int q) : q_(q) {
  if (q < 1 || q > 100) {
    throw ConfigError("quality factor must be in [1, 100], got " + std::to_string(q));
  }
}

QuantMatrix quantization_matrix(QualityFactor q, QuantTable table) {
  const int qv = q.value();
  const long scale = qv < 50 ? 5000 / qv : 200 - 2 * qv;
  const QuantMatrix& base = table == QuantTable::kLuma ? kBaseLumaTable : kBaseChromaTable;
  QuantMatrix out{};
  for (size_t i = 0; i < out.size(); ++i) {
    const long entry = (base[i] * scale + 50) / 100;
    out[i] = static_cast<int>(std::clamp(entry, 1L, 255L));
  }
  return out;
}

int32_t quantize(double coefficient, int step) {
  return static_cast<int32_t>(std::lround(coefficient / step));
}

}  // namespace semcomm
