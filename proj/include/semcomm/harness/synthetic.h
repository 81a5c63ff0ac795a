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

#ifndef SEMCOMM_HARNESS_SYNTHETIC_H_
#define SEMCOMM_HARNESS_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "semcomm/image.h"

namespace semcomm::harness {

// Procedural, photo-like flower scenes: textured foliage background, one
// class-dependent flower (petal count, shape, color), sensor grain. Used as
// a stand-in corpus when no real dataset is at hand.
struct SyntheticSpec {
  int width = 320;
  int height = 240;
  int label = 0;  // index into synthetic_class_names()
  uint64_t seed = 0;
  bool color = true;
  double grain = 3.0;  // sensor noise standard deviation
};

const std::vector<std::string>& synthetic_class_names();

PixelImage synthesize_image(const SyntheticSpec& spec);

// Writes <dir>/<class>/<class>_<i>.png, `per_class` images per class.
void write_synthetic_corpus(const std::filesystem::path& dir, int per_class, int width,
                            int height, uint64_t seed);

// Deterministic 20-image fixture set with mixed sizes (including sizes that
// are not multiples of 8) and a few gray images.
std::vector<PixelImage> fixture_corpus(int count = 20);

}  // namespace semcomm::harness

#endif  // SEMCOMM_HARNESS_SYNTHETIC_H_
