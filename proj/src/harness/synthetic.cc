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

#include "semcomm/harness/synthetic.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "semcomm/image_io.h"
#include "semcomm/rng.h"

namespace semcomm::harness {
namespace {

struct Rgb {
  double r, g, b;
};

Rgb mix(const Rgb& a, const Rgb& b, double t) {
  return {a.r + (b.r - a.r) * t, a.g + (b.g - a.g) * t, a.b + (b.b - a.b) * t};
}

double smoothstep(double e0, double e1, double x) {
  const double t = std::clamp((x - e0) / (e1 - e0), 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

// Lattice value noise in [0, 1].
class ValueNoise {
 public:
  explicit ValueNoise(uint64_t seed) : seed_(seed) {}

  double at(double x, double y) const {
    const double fx = std::floor(x);
    const double fy = std::floor(y);
    const auto ix = static_cast<int64_t>(fx);
    const auto iy = static_cast<int64_t>(fy);
    const double tx = smoothstep(0.0, 1.0, x - fx);
    const double ty = smoothstep(0.0, 1.0, y - fy);
    const double a = lattice(ix, iy), b = lattice(ix + 1, iy);
    const double c = lattice(ix, iy + 1), d = lattice(ix + 1, iy + 1);
    return (a + (b - a) * tx) * (1 - ty) + (c + (d - c) * tx) * ty;
  }

  double fractal(double x, double y, int octaves) const {
    double sum = 0.0, amp = 0.5, norm = 0.0;
    for (int o = 0; o < octaves; ++o) {
      sum += amp * at(x, y);
      norm += amp;
      x *= 2.0;
      y *= 2.0;
      amp *= 0.5;
    }
    return sum / norm;
  }

 private:
  double lattice(int64_t x, int64_t y) const {
    const uint64_t h = mix64(seed_ ^ mix64(static_cast<uint64_t>(x) * 0x9E3779B1u + static_cast<uint64_t>(y)));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
  }

  uint64_t seed_;
};

struct FlowerStyle {
  int petals;
  double petal_sharpness;  // higher: narrower petals
  double inner_ratio;      // center disc radius / flower radius
  Rgb petal;
  Rgb petal_edge;
  Rgb center;
};

const std::array<FlowerStyle, 5> kStyles = {{
    {13, 2.0, 0.22, {245, 245, 240}, {215, 215, 225}, {235, 190, 40}},  // daisy
    {34, 6.0, 0.10, {250, 215, 30}, {235, 170, 10}, {220, 160, 20}},    // dandelion
    {5, 0.6, 0.12, {200, 25, 45}, {120, 10, 30}, {90, 10, 20}},        // rose
    {21, 2.5, 0.42, {250, 200, 20}, {230, 150, 10}, {80, 45, 20}},     // sunflower
    {6, 0.9, 0.08, {235, 80, 130}, {180, 40, 90}, {200, 190, 60}},     // tulip
}};

double gaussian(Rng& rng) {
  const double u1 = std::max(rng.uniform01(), 1e-300);
  const double u2 = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

const std::vector<std::string>& synthetic_class_names() {
  static const std::vector<std::string> names = {"daisy", "dandelion", "rose", "sunflower",
                                                 "tulip"};
  return names;
}

PixelImage synthesize_image(const SyntheticSpec& spec) {
  const FlowerStyle& style = kStyles[static_cast<size_t>(spec.label) % kStyles.size()];
  Rng rng(derive_seed(spec.seed, 0x5EED));
  const ValueNoise foliage(rng.next());
  const ValueNoise detail(rng.next());
  const ValueNoise petal_tex(rng.next());

  const double w = spec.width, h = spec.height;
  const double scale = std::min(w, h);
  const double cx = w * (0.35 + 0.3 * rng.uniform01());
  const double cy = h * (0.35 + 0.3 * rng.uniform01());
  const double radius = scale * (0.28 + 0.12 * rng.uniform01());
  const double rotation = 2.0 * std::numbers::pi * rng.uniform01();
  const double light = 0.8 + 0.35 * rng.uniform01();
  const Rgb leaf_dark{25 + 20 * rng.uniform01(), 60 + 30 * rng.uniform01(), 20};
  const Rgb leaf_light{110 + 40 * rng.uniform01(), 160 + 40 * rng.uniform01(), 60};
  const double feature = 6.0 + 6.0 * rng.uniform01();  // foliage blobs across the frame

  PixelImage img(spec.width, spec.height, 3);
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      const double u = x / scale, v = y / scale;
      // Foliage with sharp-ish leaf boundaries and fine veins.
      const double f = foliage.fractal(u * feature, v * feature, 5);
      const double leaves = smoothstep(0.45, 0.55, f);
      const double fine = detail.fractal(u * 40.0, v * 40.0, 3) - 0.5;
      Rgb px = mix(leaf_dark, leaf_light, leaves);
      px = mix(px, {px.r + 60 * fine, px.g + 60 * fine, px.b + 40 * fine}, 1.0);

      // Flower in polar coordinates around its center.
      const double dx = x - cx, dy = y - cy;
      const double dist = std::hypot(dx, dy) / radius;
      const double theta = std::atan2(dy, dx) + rotation;
      const double lobe = std::pow(std::abs(std::cos(style.petals * theta / 2.0)), style.petal_sharpness);
      const double edge = 0.55 + 0.45 * lobe;
      const double petal_cover = 1.0 - smoothstep(edge - 0.02, edge + 0.02, dist);
      if (petal_cover > 0.0) {
        const double streak = petal_tex.fractal(theta * 3.0, dist * 12.0, 3);
        Rgb petal = mix(style.petal, style.petal_edge, std::clamp(dist * 0.8 + 0.4 * (streak - 0.5), 0.0, 1.0));
        px = mix(px, petal, petal_cover);
      }
      const double center_cover = 1.0 - smoothstep(style.inner_ratio - 0.015, style.inner_ratio + 0.015, dist);
      if (center_cover > 0.0) {
        const double seeds = detail.at(x * 0.6, y * 0.6);
        const Rgb c{style.center.r * (0.7 + 0.5 * seeds), style.center.g * (0.7 + 0.5 * seeds),
                    style.center.b * (0.7 + 0.5 * seeds)};
        px = mix(px, c, center_cover);
      }

      // Vignette and exposure.
      const double vx = (x - w / 2) / w, vy = (y - h / 2) / h;
      const double shade = light * (1.0 - 0.5 * (vx * vx + vy * vy));
      const double grain = spec.grain * gaussian(rng);
      img.at(x, y, 0) = static_cast<uint8_t>(std::clamp(px.r * shade + grain, 0.0, 255.0));
      img.at(x, y, 1) = static_cast<uint8_t>(std::clamp(px.g * shade + grain, 0.0, 255.0));
      img.at(x, y, 2) = static_cast<uint8_t>(std::clamp(px.b * shade + grain, 0.0, 255.0));
    }
  }
  if (spec.color) return img;

  PixelImage gray(spec.width, spec.height, 1);
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      const double l = 0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) + 0.114 * img.at(x, y, 2);
      gray.at(x, y, 0) = static_cast<uint8_t>(std::lround(std::clamp(l, 0.0, 255.0)));
    }
  }
  return gray;
}

void write_synthetic_corpus(const std::filesystem::path& dir, int per_class, int width,
                            int height, uint64_t seed) {
  const auto& names = synthetic_class_names();
  for (size_t c = 0; c < names.size(); ++c) {
    const std::filesystem::path class_dir = dir / names[c];
    std::filesystem::create_directories(class_dir);
    for (int i = 0; i < per_class; ++i) {
      SyntheticSpec spec{width, height, static_cast<int>(c),
                         derive_seed(seed, c * 100003u + static_cast<uint64_t>(i)), true};
      char name[64];
      std::snprintf(name, sizeof(name), "%s_%04d.png", names[c].c_str(), i);
      write_png(class_dir / name, synthesize_image(spec));
    }
  }
}

std::vector<PixelImage> fixture_corpus(int count) {
  static constexpr std::array<std::array<int, 2>, 5> kSizes = {
      {{320, 240}, {160, 120}, {157, 103}, {96, 200}, {250, 187}}};
  std::vector<PixelImage> out;
  for (int i = 0; i < count; ++i) {
    const auto& size = kSizes[static_cast<size_t>(i) % kSizes.size()];
    SyntheticSpec spec{size[0], size[1], i % 5, 1000u + static_cast<uint64_t>(i), i % 7 != 3};
    out.push_back(synthesize_image(spec));
  }
  return out;
}

}  // namespace semcomm::harness
