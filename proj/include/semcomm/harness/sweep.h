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

#ifndef SEMCOMM_HARNESS_SWEEP_H_
#define SEMCOMM_HARNESS_SWEEP_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "semcomm/channel.h"
#include "semcomm/codec.h"
#include "semcomm/harness/manifest.h"
#include "semcomm/mask.h"

namespace semcomm::harness {

enum class Experiment {
  kTopN,
  kRemoveK,
  kQuality,
  kPacketLoss,
  kBitError,
  kLatencyRate,
  kConventionalVsProposed,
};

std::string_view to_string(Experiment e);
Experiment parse_experiment(std::string_view text);

struct SweepSpec {
  Experiment experiment = Experiment::kTopN;
  std::filesystem::path corpus;
  std::filesystem::path out;
  uint64_t seed = 0;
  int workers = 1;

  int quality = 90;  // coding Q for every experiment except kQuality
  ColorMode color_mode = ColorMode::kYCbCr444;

  // Parameter axes; only the ones the experiment uses are read.
  std::vector<int> n_values;            // top_n
  std::vector<int> k_values;            // remove_k
  std::vector<int> q_values;            // quality
  std::vector<int> drop_counts;         // packet_loss
  std::vector<double> bit_error_probs;  // bit_error
  std::vector<Protection> protections;  // bit_error
  std::vector<double> deadlines_ms;     // latency_rate, conventional_vs_proposed
  std::vector<double> rates_mbps;       // latency_rate, conventional_vs_proposed

  // Base channel for transmission experiments; the swept axis overrides
  // its field and the per-row seed replaces cfg.seed.
  ChannelConfig channel;
};

// Spec with the default axes of an experiment filled in.
SweepSpec default_sweep(Experiment e);

// Throws ConfigError for out-of-domain values: n in [1, 64], k in [0, 63],
// Q in [1, 100], drops in [0, 5], p in [0, 1], rates/deadlines positive.
void validate(const SweepSpec& spec);

// Runs the Cartesian product (corpus x parameters), writes images under
// <out>/<experiment>/images/<label>/ and the manifest to
// <out>/<experiment>/manifest.csv. Row i uses seed `spec.seed ^ i`.
// Per-row failures are recorded in the manifest and do not stop the sweep.
std::vector<ManifestRow> run_sweep(const SweepSpec& spec);

std::filesystem::path manifest_path(const SweepSpec& spec);

enum class DropSchedule {
  kVector,       // explicit 64-entry per-plane probabilities
  kTopNUniform,  // keep top-n with n uniform in [1, 64]
};

struct AugmentSpec {
  std::filesystem::path corpus;
  std::filesystem::path out;
  uint64_t seed = 0;
  int workers = 1;
  int quality = 90;
  ColorMode color_mode = ColorMode::kYCbCr444;
  DropSchedule schedule = DropSchedule::kVector;
  std::vector<double> drop_prob = std::vector<double>(64, 0.0);
  DropGranularity granularity = DropGranularity::kPerBlock;
};

// Named schedules: "none", "top_n_uniform", "uniform:<p>", "linear:<pmax>"
// (p[k] = pmax * k / 63). Throws ConfigError.
void apply_schedule(AugmentSpec& spec, std::string_view name);

// One augmented reconstruction per corpus image, written to
// <out>/<label>/<tag>.png, manifest at <out>/manifest.csv. Image i uses
// seed `spec.seed ^ i`.
std::vector<ManifestRow> run_augment(const AugmentSpec& spec);

}  // namespace semcomm::harness

#endif  // SEMCOMM_HARNESS_SWEEP_H_
