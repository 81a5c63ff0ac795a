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

#include "semcomm/harness/manifest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "semcomm/error.h"

namespace semcomm::harness {
namespace {

template <typename T>
std::string opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return format_real(*v);
  } else {
    return std::to_string(*v);
  }
}

std::vector<std::string> split_csv_line(const std::string& line, std::istream& in) {
  std::vector<std::string> fields;
  std::string field;
  std::string current = line;
  bool quoted = false;
  for (size_t i = 0;; ++i) {
    if (i == current.size()) {
      if (quoted) {
        // Quoted field spans lines.
        std::string next;
        if (!std::getline(in, next)) throw FormatError("csv: unterminated quoted field");
        field.push_back('\n');
        current = next;
        i = static_cast<size_t>(-1);
        continue;
      }
      break;
    }
    const char c = current[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < current.size() && current[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace

const std::vector<std::string>& manifest_columns() {
  static const std::vector<std::string> columns = {
      "source", "label", "experiment", "variant",
      "n", "k", "q", "drop_count", "drop_rate", "bit_error_prob",
      "rate_bps", "deadline_ms", "compute_time_ms", "protection", "seed",
      "status", "output", "psnr", "mask_cardinality", "mask_total",
      "packets_total", "packets_sent", "packets_delivered", "bits_flipped",
      "bytes_budget", "protected_bytes", "effective_payload_bytes",
      "conventional_status", "conventional_q",
  };
  return columns;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::vector<std::string> manifest_fields(const ManifestRow& row) {
  std::vector<std::string> f = {
      row.source,
      row.label,
      row.experiment,
      row.variant,
      opt(row.n),
      opt(row.k),
      opt(row.q),
      opt(row.drop_count),
      opt(row.drop_rate),
      opt(row.bit_error_prob),
      opt(row.rate_bps),
      opt(row.deadline_ms),
      opt(row.compute_time_ms),
      row.protection ? std::string(to_string(*row.protection)) : "",
      std::to_string(row.seed),
      row.status,
      row.output,
      opt(row.psnr),
      opt(row.mask_cardinality),
      opt(row.mask_total),
  };
  if (row.report) {
    const TransmissionReport& r = *row.report;
    f.push_back(std::to_string(r.packets_total));
    f.push_back(std::to_string(r.packets_sent));
    f.push_back(std::to_string(r.packets_delivered));
    f.push_back(std::to_string(r.bits_flipped));
    f.push_back(opt(r.bytes_budget));
    f.push_back(std::to_string(r.protected_bytes));
    f.push_back(std::to_string(r.effective_payload_bytes));
  } else {
    f.insert(f.end(), 7, "");
  }
  f.push_back(row.conventional_status.value_or(""));
  f.push_back(opt(row.conventional_q));
  return f;
}

void write_manifest_header(std::ostream& out) {
  const auto& cols = manifest_columns();
  for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
}

void write_manifest_row(std::ostream& out, const ManifestRow& row) {
  const auto fields = manifest_fields(row);
  for (size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_escape(fields[i]);
  out << '\n';
}

void write_manifest(const std::filesystem::path& path, const std::vector<ManifestRow>& rows) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path.string());
  write_manifest_header(out);
  for (const ManifestRow& row : rows) write_manifest_row(out, row);
  if (!out) throw FormatError("write failed: " + path.string());
}

size_t CsvTable::column(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw FormatError("csv: no column '" + name + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw FormatError("csv: empty file " + path.string());
  table.header = split_csv_line(line, in);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    table.rows.push_back(split_csv_line(line, in));
    if (table.rows.back().size() != table.header.size()) {
      throw FormatError("csv: row width differs from header in " + path.string());
    }
  }
  return table;
}

}  // namespace semcomm::harness
