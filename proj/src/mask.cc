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

#include "semcomm/mask.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "semcomm/codec.h"
#include "semcomm/dct.h"
#include "semcomm/error.h"
#include "semcomm/rng.h"

namespace semcomm {

ReconstructionMask::ReconstructionMask(int channels, int blocks, bool present)
    : channels_(channels),
      blocks_(blocks),
      flags_(static_cast<size_t>(channels) * blocks * kCoefficientsPerBlock, present ? 1 : 0) {}

ReconstructionMask ReconstructionMask::full(const EncodedImage& enc) {
  return ReconstructionMask(enc.channels, enc.block_count(), true);
}

ReconstructionMask ReconstructionMask::none(const EncodedImage& enc) {
  return ReconstructionMask(enc.channels, enc.block_count(), false);
}

bool ReconstructionMask::matches(const EncodedImage& enc) const {
  return channels_ == enc.channels && blocks_ == enc.block_count();
}

void ReconstructionMask::set_plane(int channel, int k, bool value) {
  const size_t begin = offset(channel, k, 0);
  std::fill(flags_.begin() + begin, flags_.begin() + begin + blocks_, value ? 1 : 0);
}

int64_t ReconstructionMask::cardinality() const {
  return std::accumulate(flags_.begin(), flags_.end(), int64_t{0});
}

bool ReconstructionMask::includes(const ReconstructionMask& other) const {
  if (other.flags_.size() != flags_.size()) return false;
  for (size_t i = 0; i < flags_.size(); ++i) {
    if (other.flags_[i] && !flags_[i]) return false;
  }
  return true;
}

namespace {

struct MaskBuilder {
  const EncodedImage& enc;

  ReconstructionMask operator()(const KeepTopN& spec) const {
    if (spec.n < 1 || spec.n > kCoefficientsPerBlock) {
      throw ConfigError("keep_top_n: n must be in [1, 64], got " + std::to_string(spec.n));
    }
    ReconstructionMask mask = ReconstructionMask::none(enc);
    for (int k = 0; k < spec.n; ++k) {
      for (int ch = 0; ch < enc.channels; ++ch) mask.set_plane(ch, k, true);
    }
    return mask;
  }

  ReconstructionMask operator()(const RemovePlane& spec) const {
    if (spec.k < 0 || spec.k >= kCoefficientsPerBlock) {
      throw ConfigError("remove_plane: k must be in [0, 63], got " + std::to_string(spec.k));
    }
    ReconstructionMask mask = ReconstructionMask::full(enc);
    for (int ch = 0; ch < enc.channels; ++ch) mask.set_plane(ch, spec.k, false);
    return mask;
  }

  ReconstructionMask operator()(const FromReceived& spec) const {
    ReconstructionMask mask = ReconstructionMask::none(enc);
    for (const CoefficientId& id : spec.received) {
      if (id.channel < 0 || id.channel >= enc.channels || id.k < 0 ||
          id.k >= kCoefficientsPerBlock || id.block < 0 || id.block >= enc.block_count()) {
        throw ConfigError("from_received: coefficient id out of range");
      }
      mask.set(id.channel, id.k, id.block, true);
    }
    return mask;
  }
};

}  // namespace

ReconstructionMask make_mask(const EncodedImage& enc, const MaskSpec& spec) {
  return std::visit(MaskBuilder{enc}, spec);
}

ReconstructionMask augment_drop(const EncodedImage& enc, std::span<const double> drop_prob,
                                uint64_t seed, DropGranularity granularity) {
  if (drop_prob.size() != kCoefficientsPerBlock) {
    throw ConfigError("drop probability vector needs 64 entries, got " +
                      std::to_string(drop_prob.size()));
  }
  for (double p : drop_prob) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("drop probability outside [0, 1]");
  }
  Rng rng(seed);
  ReconstructionMask mask = ReconstructionMask::full(enc);
  const int blocks = enc.block_count();
  for (int k = 0; k < kCoefficientsPerBlock; ++k) {
    for (int ch = 0; ch < enc.channels; ++ch) {
      if (granularity == DropGranularity::kPerPlane) {
        if (rng.bernoulli(drop_prob[k])) mask.set_plane(ch, k, false);
        continue;
      }
      for (int b = 0; b < blocks; ++b) {
        if (rng.bernoulli(drop_prob[k])) mask.set(ch, k, b, false);
      }
    }
  }
  return mask;
}

}  // namespace semcomm
