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

#include "semcomm/harness/run_config.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "semcomm/error.h"

namespace semcomm::harness {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Parses a leading number and returns the remaining suffix.
double leading_number(std::string_view text, std::string_view* suffix) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr == text.data()) {
    throw ConfigError("not a number: '" + std::string(text) + "'");
  }
  *suffix = trim(std::string_view(ptr, text.data() + text.size() - ptr));
  return value;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

int64_t parse_int(std::string_view text) {
  text = trim(text);
  int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("not an integer: '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

uint64_t parse_rate(std::string_view text) {
  std::string_view suffix;
  const double value = leading_number(text, &suffix);
  double scale = 1.0;
  if (suffix.empty() || iequals(suffix, "bps")) {
    scale = 1.0;
  } else if (iequals(suffix, "kbps")) {
    scale = 1e3;
  } else if (iequals(suffix, "mbps")) {
    scale = 1e6;
  } else if (iequals(suffix, "gbps")) {
    scale = 1e9;
  } else {
    throw ConfigError("unknown rate unit: '" + std::string(suffix) + "'");
  }
  const double bps = value * scale;
  if (!(bps > 0.0) || bps > 1e15) throw ConfigError("rate out of range: " + std::string(text));
  return static_cast<uint64_t>(std::llround(bps));
}

Duration parse_duration(std::string_view text) {
  std::string_view suffix;
  const double value = leading_number(text, &suffix);
  double ns_per_unit = 1e9;
  if (suffix.empty() || suffix == "s") {
    ns_per_unit = 1e9;
  } else if (suffix == "ms") {
    ns_per_unit = 1e6;
  } else if (suffix == "us") {
    ns_per_unit = 1e3;
  } else if (suffix == "ns") {
    ns_per_unit = 1.0;
  } else {
    throw ConfigError("unknown duration unit: '" + std::string(suffix) + "'");
  }
  if (!(value >= 0.0) || value * ns_per_unit > 1e18) {
    throw ConfigError("duration out of range: " + std::string(text));
  }
  return Duration(std::llround(value * ns_per_unit));
}

double parse_probability(std::string_view text) {
  std::string_view suffix;
  const double p = leading_number(text, &suffix);
  if (!suffix.empty() || !(p >= 0.0 && p <= 1.0)) {
    throw ConfigError("probability must be in [0, 1]: " + std::string(text));
  }
  return p;
}

void apply_channel_key(ChannelConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "bit_error_prob") {
    cfg.bit_error_prob = parse_probability(value);
  } else if (key == "drop_count") {
    const int64_t n = parse_int(value);
    if (n < 0) throw ConfigError("drop_count must be non-negative");
    cfg.loss = n == 0 ? LossSpec{NoLoss{}} : LossSpec{DropCount{static_cast<int>(n)}};
  } else if (key == "drop_rate") {
    const double r = parse_probability(value);
    cfg.loss = r == 0.0 ? LossSpec{NoLoss{}} : LossSpec{DropRate{r}};
  } else if (key == "rate") {
    cfg.rate_bps = parse_rate(value);
  } else if (key == "deadline") {
    cfg.deadline = parse_duration(value);
  } else if (key == "compute_time") {
    cfg.compute_time = parse_duration(value);
  } else if (key == "protection") {
    cfg.protection = parse_protection(value);
  } else if (key == "fec_overhead_factor") {
    std::string_view suffix;
    cfg.fec_overhead_factor = leading_number(value, &suffix);
    if (!suffix.empty() || cfg.fec_overhead_factor < 0.0) {
      throw ConfigError("fec_overhead_factor must be a non-negative number");
    }
  } else if (key == "seed") {
    uint64_t s = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), s);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw ConfigError("seed must be an unsigned integer: '" + std::string(value) + "'");
    }
    cfg.seed = s;
  } else {
    throw ConfigError("unknown channel key: '" + std::string(key) + "'");
  }
}

ChannelConfig parse_run_config(std::string_view text, ChannelConfig base) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const size_t hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const size_t eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("run file line " + std::to_string(line_no) + ": expected key=value");
    }
    apply_channel_key(base, view.substr(0, eq), view.substr(eq + 1));
  }
  base.validate();
  return base;
}

ChannelConfig load_run_file(const std::filesystem::path& path, ChannelConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open run file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), base);
}

}  // namespace semcomm::harness
