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

#ifndef SEMCOMM_MASK_H_
#define SEMCOMM_MASK_H_

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace semcomm {

struct EncodedImage;

// Presence flag per (channel, zigzag plane, block).
class ReconstructionMask {
 public:
  ReconstructionMask() = default;
  ReconstructionMask(int channels, int blocks, bool present);

  static ReconstructionMask full(const EncodedImage& enc);
  static ReconstructionMask none(const EncodedImage& enc);

  int channels() const { return channels_; }
  int blocks() const { return blocks_; }
  bool matches(const EncodedImage& enc) const;

  bool present(int channel, int k, int block) const {
    return flags_[offset(channel, k, block)] != 0;
  }
  void set(int channel, int k, int block, bool value) {
    flags_[offset(channel, k, block)] = value ? 1 : 0;
  }
  void set_plane(int channel, int k, bool value);

  // Number of present coefficients.
  int64_t cardinality() const;
  int64_t size() const { return static_cast<int64_t>(flags_.size()); }
  bool all() const { return cardinality() == size(); }

  // True when every coefficient present in `other` is present here.
  bool includes(const ReconstructionMask& other) const;

  friend bool operator==(const ReconstructionMask&, const ReconstructionMask&) = default;

 private:
  size_t offset(int channel, int k, int block) const {
    return (static_cast<size_t>(k) * channels_ + channel) * blocks_ + block;
  }

  int channels_ = 0;
  int blocks_ = 0;
  std::vector<uint8_t> flags_;
};

struct KeepTopN {
  int n = 64;
};
struct RemovePlane {
  int k = 0;
};
struct CoefficientId {
  int channel = 0;
  int k = 0;
  int block = 0;
};
struct FromReceived {
  std::vector<CoefficientId> received;
};

using MaskSpec = std::variant<KeepTopN, RemovePlane, FromReceived>;

// Throws ConfigError for n outside [1, 64], k outside [0, 63], or received
// ids outside the image.
ReconstructionMask make_mask(const EncodedImage& enc, const MaskSpec& spec);

enum class DropGranularity {
  kPerBlock,  // every (channel, plane, block) draws independently
  kPerPlane,  // one draw per (channel, plane)
};

// Marks coefficients of plane k absent with probability drop_prob[k].
// Deterministic in `seed`. Throws ConfigError unless drop_prob has 64 entries
// in [0, 1].
ReconstructionMask augment_drop(const EncodedImage& enc,
                                std::span<const double> drop_prob, uint64_t seed,
                                DropGranularity granularity = DropGranularity::kPerBlock);

}  // namespace semcomm

#endif  // SEMCOMM_MASK_H_
