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

// semcomm: encode, decode, corrupt, sweep and augment images with the
// progressive DCT codec and the channel simulator.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "semcomm/error.h"
#include "semcomm/harness/commands.h"
#include "semcomm/harness/run_config.h"
#include "semcomm/harness/sweep.h"

namespace {

using namespace semcomm;
using namespace semcomm::harness;

// Channel flags are kept as raw strings and applied in a fixed order after
// the optional run file, so that flags override file values.
struct ChannelFlags {
  std::string run_file;
  std::map<std::string, std::string> values;
  std::optional<uint64_t> seed;

  void add(CLI::App* app, bool with_seed) {
    app->add_option("--run-file", run_file, "key=value channel configuration file");
    for (const char* key : {"bit_error_prob", "drop_count", "drop_rate", "rate", "deadline",
                            "compute_time", "protection", "fec_overhead_factor"}) {
      app->add_option(std::string("--") + key, values[key]);
    }
    if (with_seed) app->add_option("--seed", seed, "channel RNG seed");
  }

  ChannelConfig resolve() const {
    ChannelConfig cfg;
    if (!run_file.empty()) cfg = load_run_file(run_file, cfg);
    for (const auto& [key, value] : values) {
      if (!value.empty()) apply_channel_key(cfg, key, value);
    }
    if (seed) cfg.seed = *seed;
    cfg.validate();
    return cfg;
  }
};

std::vector<double> parse_prob_vector(const std::string& text) {
  std::vector<double> out;
  std::string item;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      out.push_back(parse_probability(item));
      item.clear();
    } else {
      item += text[i];
    }
  }
  if (out.size() != 64) throw ConfigError("--drop_prob needs 64 comma-separated values");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Progressive DCT image codec and channel simulator"};
  app.require_subcommand(1);

  EncodeOptions enc;
  std::string enc_mode = "ycbcr444";
  auto* encode = app.add_subcommand("encode", "Encode an image to a .semc stream");
  encode->add_option("input", enc.input, "PNG or BMP image")->required();
  encode->add_option("--out,-o", enc.output, "output .semc")->required();
  encode->add_option("--quality,-q", enc.quality, "quality factor")->check(CLI::Range(1, 100));
  encode->add_option("--color_mode", enc_mode, "luma | ycbcr444");

  DecodeOptions dec;
  std::string dec_reference;
  auto* decode = app.add_subcommand("decode", "Reconstruct a .semc or .pkts file");
  decode->add_option("input", dec.input, ".semc or .pkts")->required();
  decode->add_option("--out,-o", dec.output, "output PNG")->required();
  decode->add_option("--keep_top", dec.keep_top_n, "keep planes 0..n-1")->check(CLI::Range(1, 64));
  decode->add_option("--remove_k", dec.remove_k, "remove plane k")->check(CLI::Range(0, 63));
  decode->add_option("--reference", dec_reference, "original image for PSNR");

  CorruptOptions cor;
  std::string cor_pkts, cor_png, cor_report;
  ChannelFlags cor_channel;
  auto* corrupt = app.add_subcommand("corrupt", "Send a .semc stream through the channel");
  corrupt->add_option("input", cor.input, ".semc")->required();
  corrupt->add_option("--out,-o", cor_png, "reconstructed PNG");
  corrupt->add_option("--packets", cor_pkts, "received packets (.pkts)");
  corrupt->add_option("--report", cor_report, "append a CSV report row");
  cor_channel.add(corrupt, true);

  SweepSpec sw;
  std::string sw_experiment, sw_mode = "ycbcr444";
  std::optional<int> sw_quality;
  std::vector<int> sw_n, sw_k, sw_q, sw_drops;
  std::vector<double> sw_probs, sw_deadlines, sw_rates;
  std::vector<std::string> sw_protections;
  ChannelFlags sw_channel;
  auto* sweep = app.add_subcommand("sweep", "Run an experiment grid over a corpus");
  sweep->add_option("--experiment", sw_experiment,
                    "top_n | remove_k | quality | packet_loss | bit_error | latency_rate | "
                    "conventional_vs_proposed")
      ->required();
  sweep->add_option("--corpus", sw.corpus, "directory-per-class image tree")->required();
  sweep->add_option("--out,-o", sw.out, "output directory")->required();
  sweep->add_option("--seed", sw.seed);
  sweep->add_option("--workers", sw.workers)->check(CLI::PositiveNumber);
  sweep->add_option("--quality", sw_quality)->check(CLI::Range(1, 100));
  sweep->add_option("--color_mode", sw_mode);
  sweep->add_option("--n_values", sw_n)->delimiter(',');
  sweep->add_option("--k_values", sw_k)->delimiter(',');
  sweep->add_option("--q_values", sw_q)->delimiter(',');
  sweep->add_option("--drop_counts", sw_drops)->delimiter(',');
  sweep->add_option("--bit_error_probs", sw_probs)->delimiter(',');
  sweep->add_option("--protections", sw_protections)->delimiter(',');
  sweep->add_option("--deadlines_ms", sw_deadlines)->delimiter(',');
  sweep->add_option("--rates_mbps", sw_rates)->delimiter(',');
  sw_channel.add(sweep, false);

  AugmentSpec au;
  std::string au_mode = "ycbcr444", au_schedule, au_probs, au_granularity = "block";
  auto* augment = app.add_subcommand("augment", "Write a randomly degraded copy of a corpus");
  augment->add_option("--corpus", au.corpus)->required();
  augment->add_option("--out,-o", au.out)->required();
  augment->add_option("--seed", au.seed);
  augment->add_option("--workers", au.workers)->check(CLI::PositiveNumber);
  augment->add_option("--quality", au.quality, "training quality factor")->check(CLI::Range(1, 100));
  augment->add_option("--color_mode", au_mode);
  auto* schedule_opt = augment->add_option("--schedule", au_schedule,
                      "none | top_n_uniform | uniform:<p> | linear:<pmax>");
  augment->add_option("--drop_prob", au_probs, "64 comma-separated per-plane probabilities")
      ->excludes(schedule_opt);
  augment->add_option("--granularity", au_granularity, "block | plane")
      ->check(CLI::IsMember({"block", "plane"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*encode) {
      enc.color_mode = parse_color_mode(enc_mode);
      cmd_encode(enc, std::cout);
    } else if (*decode) {
      if (!dec_reference.empty()) dec.reference = dec_reference;
      cmd_decode(dec, std::cout);
    } else if (*corrupt) {
      cor.channel = cor_channel.resolve();
      if (!cor_pkts.empty()) cor.packets_out = cor_pkts;
      if (!cor_png.empty()) cor.image_out = cor_png;
      if (!cor_report.empty()) cor.report_csv = cor_report;
      const CorruptSummary s = cmd_corrupt(cor, std::cout);
      if (!s.decodable) return 2;
    } else if (*sweep) {
      const SweepSpec defaults = default_sweep(parse_experiment(sw_experiment));
      sw.experiment = defaults.experiment;
      sw.color_mode = parse_color_mode(sw_mode);
      sw.quality = sw_quality.value_or(defaults.quality);
      sw.n_values = sw_n.empty() ? defaults.n_values : sw_n;
      sw.k_values = sw_k.empty() ? defaults.k_values : sw_k;
      sw.q_values = sw_q.empty() ? defaults.q_values : sw_q;
      sw.drop_counts = sw_drops.empty() ? defaults.drop_counts : sw_drops;
      sw.bit_error_probs = sw_probs.empty() ? defaults.bit_error_probs : sw_probs;
      sw.protections = defaults.protections;
      if (!sw_protections.empty()) {
        sw.protections.clear();
        for (const auto& p : sw_protections) sw.protections.push_back(parse_protection(p));
      }
      sw.deadlines_ms = sw_deadlines.empty() ? defaults.deadlines_ms : sw_deadlines;
      sw.rates_mbps = sw_rates.empty() ? defaults.rates_mbps : sw_rates;
      sw.channel = sw_channel.resolve();
      const auto rows = run_sweep(sw);
      size_t failed = 0;
      for (const auto& r : rows) failed += r.ok() ? 0 : 1;
      std::cout << rows.size() << " rows (" << failed << " failed) -> "
                << manifest_path(sw).string() << '\n';
    } else if (*augment) {
      au.color_mode = parse_color_mode(au_mode);
      au.granularity =
          au_granularity == "plane" ? DropGranularity::kPerPlane : DropGranularity::kPerBlock;
      if (!au_schedule.empty()) apply_schedule(au, au_schedule);
      if (!au_probs.empty()) au.drop_prob = parse_prob_vector(au_probs);
      const auto rows = run_augment(au);
      size_t failed = 0;
      for (const auto& r : rows) failed += r.ok() ? 0 : 1;
      std::cout << rows.size() << " images (" << failed << " failed) -> "
                << (au.out / "manifest.csv").string() << '\n';
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
