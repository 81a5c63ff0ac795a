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

#include "semcomm/image.h"

#include <cmath>
#include <limits>

#include "semcomm/error.h"

namespace semcomm {

double mse(const PixelImage& a, const PixelImage& b) {
  if (a.width != b.width || a.height != b.height || a.channels != b.channels) {
    throw ConfigError("mse: image shapes differ");
  }
  if (a.samples.empty()) return 0.0;
  double acc = 0.0;
  for (size_t i = 0; i < a.samples.size(); ++i) {
    const double d = static_cast<double>(a.samples[i]) - b.samples[i];
    acc += d * d;
  }
  return acc / static_cast<double>(a.samples.size());
}

double psnr(const PixelImage& a, const PixelImage& b) {
  const double e = mse(a, b);
  if (e == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / e);
}

}  // namespace semcomm
