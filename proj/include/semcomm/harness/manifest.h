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

#ifndef SEMCOMM_HARNESS_MANIFEST_H_
#define SEMCOMM_HARNESS_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "semcomm/channel.h"

namespace semcomm::harness {

// Column order of manifest schema version 1 (see docs/formats.md).
const std::vector<std::string>& manifest_columns();

// One reconstructed image (or one failed attempt) of a sweep or augment run.
struct ManifestRow {
  std::string source;
  std::string label;
  std::string experiment;
  std::string variant;  // "proposed", "conventional", or empty

  std::optional<int> n;
  std::optional<int> k;
  std::optional<int> q;
  std::optional<int> drop_count;
  std::optional<double> drop_rate;
  std::optional<double> bit_error_prob;
  std::optional<uint64_t> rate_bps;
  std::optional<double> deadline_ms;
  std::optional<double> compute_time_ms;
  std::optional<Protection> protection;
  uint64_t seed = 0;

  std::string status = "ok";  // "ok" or "failed:<reason>"
  std::string output;         // empty for failures
  std::optional<double> psnr;
  std::optional<int64_t> mask_cardinality;
  std::optional<int64_t> mask_total;
  std::optional<TransmissionReport> report;

  std::optional<std::string> conventional_status;
  std::optional<int> conventional_q;

  bool ok() const { return status == "ok"; }
};

// Values rendered as they appear in the CSV (6 significant digits for reals).
std::vector<std::string> manifest_fields(const ManifestRow& row);

void write_manifest_header(std::ostream& out);
void write_manifest_row(std::ostream& out, const ManifestRow& row);
void write_manifest(const std::filesystem::path& path, const std::vector<ManifestRow>& rows);

// RFC 4180-style quoting when a field holds ',', '"' or a newline.
std::string csv_escape(const std::string& field);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a column; throws FormatError if absent.
  size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

// %.6g formatting; "inf"/"-inf"/"nan" for non-finite values.
std::string format_real(double v);

}  // namespace semcomm::harness

#endif  // SEMCOMM_HARNESS_MANIFEST_H_
