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

#ifndef SEMCOMM_HARNESS_COMMANDS_H_
#define SEMCOMM_HARNESS_COMMANDS_H_

// Library entry points behind the `semcomm` CLI subcommands.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "semcomm/channel.h"
#include "semcomm/codec.h"

namespace semcomm::harness {

struct EncodeOptions {
  std::filesystem::path input;
  std::filesystem::path output;
  int quality = 90;
  ColorMode color_mode = ColorMode::kYCbCr444;
};

struct EncodeSummary {
  size_t stream_bytes = 0;
  size_t header_bytes = 0;
  size_t plane0_bytes = 0;  // all channels
  size_t packets = 0;
};

EncodeSummary cmd_encode(const EncodeOptions& opts, std::ostream& log);

struct DecodeOptions {
  std::filesystem::path input;  // .semc (full stream) or .pkts (any subset)
  std::filesystem::path output;  // PNG
  std::optional<int> keep_top_n;
  std::optional<int> remove_k;
  std::optional<std::filesystem::path> reference;  // PSNR against this image
};

struct DecodeSummary {
  bool decodable = false;
  int64_t mask_cardinality = 0;
  int64_t mask_total = 0;
  std::optional<double> psnr;
};

DecodeSummary cmd_decode(const DecodeOptions& opts, std::ostream& log);

struct CorruptOptions {
  std::filesystem::path input;  // .semc
  ChannelConfig channel;
  std::optional<std::filesystem::path> packets_out;  // .pkts of what arrived
  std::optional<std::filesystem::path> image_out;    // PNG reconstruction
  std::optional<std::filesystem::path> report_csv;   // appended, header if new
};

struct CorruptSummary {
  TransmissionReport report;
  bool decodable = false;
  int64_t mask_cardinality = 0;
  int64_t mask_total = 0;
  std::optional<double> psnr_vs_full;  // against the uncorrupted reconstruction
};

// Columns of the corrupt report CSV.
const std::vector<std::string>& report_columns();

CorruptSummary cmd_corrupt(const CorruptOptions& opts, std::ostream& log);

}  // namespace semcomm::harness

#endif  // SEMCOMM_HARNESS_COMMANDS_H_
