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

#ifndef SEMCOMM_HARNESS_RUN_CONFIG_H_
#define SEMCOMM_HARNESS_RUN_CONFIG_H_

#include <filesystem>
#include <string_view>

#include "semcomm/channel.h"

namespace semcomm::harness {

// Values accept unit suffixes:
//   rate:      "5e6", "5000000bps", "500kbps", "5Mbps", "1Gbps"
//   durations: "0.01" (seconds), "10ms", "250us", "2s"
uint64_t parse_rate(std::string_view text);
Duration parse_duration(std::string_view text);
double parse_probability(std::string_view text);

// Applies one ChannelConfig field by name: bit_error_prob, drop_count,
// drop_rate, rate, deadline, compute_time, protection, fec_overhead_factor,
// seed. Throws ConfigError for unknown keys or bad values.
void apply_channel_key(ChannelConfig& cfg, std::string_view key, std::string_view value);

// key=value lines; '#' starts a comment; blank lines ignored.
ChannelConfig parse_run_config(std::string_view text, ChannelConfig base = {});
ChannelConfig load_run_file(const std::filesystem::path& path, ChannelConfig base = {});

}  // namespace semcomm::harness

#endif  // SEMCOMM_HARNESS_RUN_CONFIG_H_
