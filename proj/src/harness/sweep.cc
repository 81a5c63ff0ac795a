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

#include "semcomm/harness/sweep.h"

#include <atomic>
#include <cstdio>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "semcomm/bitstream.h"
#include "semcomm/error.h"
#include "semcomm/harness/corpus.h"
#include "semcomm/image_io.h"
#include "semcomm/rng.h"

namespace semcomm::harness {
namespace {

namespace fs = std::filesystem;

// One parameter combination of a sweep.
struct Cell {
  std::optional<int> n = {};
  std::optional<int> k = {};
  std::optional<int> q = {};
  std::optional<int> drop_count = {};
  std::optional<double> bit_error_prob = {};
  std::optional<Protection> protection = {};
  std::optional<double> deadline_ms = {};
  std::optional<double> rate_mbps = {};
  std::string variant = {};
  std::string tag = {};
};

std::string real_tag(double v) { return format_real(v); }

std::vector<Cell> enumerate_cells(const SweepSpec& spec) {
  std::vector<Cell> cells;
  char buf[96];
  switch (spec.experiment) {
    case Experiment::kTopN:
      for (int n : spec.n_values) {
        std::snprintf(buf, sizeof(buf), "n%02d", n);
        cells.push_back({.n = n, .tag = buf});
      }
      break;
    case Experiment::kRemoveK:
      for (int k : spec.k_values) {
        std::snprintf(buf, sizeof(buf), "k%02d", k);
        cells.push_back({.k = k, .tag = buf});
      }
      break;
    case Experiment::kQuality:
      for (int q : spec.q_values) {
        std::snprintf(buf, sizeof(buf), "q%03d", q);
        cells.push_back({.q = q, .tag = buf});
      }
      break;
    case Experiment::kPacketLoss:
      for (int d : spec.drop_counts) {
        std::snprintf(buf, sizeof(buf), "drop%d", d);
        cells.push_back({.drop_count = d, .tag = buf});
      }
      break;
    case Experiment::kBitError:
      for (double p : spec.bit_error_probs) {
        for (Protection prot : spec.protections) {
          cells.push_back({.bit_error_prob = p,
                           .protection = prot,
                           .tag = "p" + real_tag(p) + "_" + std::string(to_string(prot))});
        }
      }
      break;
    case Experiment::kLatencyRate:
    case Experiment::kConventionalVsProposed: {
      const bool both = spec.experiment == Experiment::kConventionalVsProposed;
      for (double d : spec.deadlines_ms) {
        for (double r : spec.rates_mbps) {
          const std::string tag = "d" + real_tag(d) + "ms_r" + real_tag(r) + "Mbps";
          cells.push_back({.deadline_ms = d,
                           .rate_mbps = r,
                           .variant = "proposed",
                           .tag = both ? tag + "_proposed" : tag});
          if (both) {
            cells.push_back(
                {.deadline_ms = d, .rate_mbps = r, .variant = "conventional", .tag = tag + "_conventional"});
          }
        }
      }
      break;
    }
  }
  return cells;
}

bool uses_channel(Experiment e) {
  return e == Experiment::kPacketLoss || e == Experiment::kBitError ||
         e == Experiment::kLatencyRate || e == Experiment::kConventionalVsProposed;
}

ChannelConfig cell_channel(const SweepSpec& spec, const Cell& cell, uint64_t seed) {
  ChannelConfig cfg = spec.channel;
  cfg.seed = seed;
  if (cell.drop_count) {
    cfg.loss = *cell.drop_count == 0 ? LossSpec{NoLoss{}} : LossSpec{DropCount{*cell.drop_count}};
  }
  if (cell.bit_error_prob) cfg.bit_error_prob = *cell.bit_error_prob;
  if (cell.protection) cfg.protection = *cell.protection;
  if (cell.deadline_ms) {
    cfg.deadline = Duration(std::llround(*cell.deadline_ms * 1e6));
    cfg.rate_bps = static_cast<uint64_t>(std::llround(*cell.rate_mbps * 1e6));
  }
  return cfg;
}

void fill_channel_columns(ManifestRow& row, const ChannelConfig& cfg) {
  row.bit_error_prob = cfg.bit_error_prob;
  if (const auto* d = std::get_if<DropCount>(&cfg.loss)) {
    row.drop_count = d->n;
  } else if (const auto* r = std::get_if<DropRate>(&cfg.loss)) {
    row.drop_rate = r->r;
  } else {
    row.drop_count = 0;
  }
  row.rate_bps = cfg.rate_bps;
  if (cfg.deadline) row.deadline_ms = static_cast<double>(cfg.deadline->count()) / 1e6;
  row.compute_time_ms = static_cast<double>(cfg.compute_time.count()) / 1e6;
  row.protection = cfg.protection;
}

// Everything derived once per corpus image.
struct ImageContext {
  CorpusEntry entry;
  PixelImage reference;
  TransformedImage transformed;
  EncodedImage encoded;  // at spec.quality
  std::vector<Packet> packets;
  std::map<std::pair<Protection, double>, ProtectedBitSet> protection;
  ConventionalCache conventional;

  const ProtectedBitSet& protected_bits(Protection mode, double factor) {
    auto key = std::make_pair(mode, factor);
    auto it = protection.find(key);
    if (it == protection.end()) {
      it = protection.emplace(key, protected_bit_set(encoded, mode, factor)).first;
    }
    return it->second;
  }
};

// Reconstructs what arrived and fills the outcome columns of `row`.
void finish_received(ManifestRow& row, const Transmission& tx, const PixelImage& reference,
                     const fs::path& output) {
  row.report = tx.report;
  if (!tx.decodable) {
    row.status = "failed:undecodable";
    return;
  }
  std::optional<ReceivedImage> received = depacketize(tx.received);
  if (!received) {
    row.status = "failed:undecodable";
    return;
  }
  const PixelImage img = reconstruct(received->image, received->mask);
  write_png(output, img);
  row.output = output.string();
  row.psnr = psnr(reference, img);
  row.mask_cardinality = received->mask.cardinality();
  row.mask_total = received->mask.size();
}

void run_cell(const SweepSpec& spec, ImageContext& ctx, const Cell& cell, ManifestRow& row,
              const fs::path& output) {
  switch (spec.experiment) {
    case Experiment::kTopN:
    case Experiment::kRemoveK: {
      const MaskSpec ms = cell.n ? MaskSpec{KeepTopN{*cell.n}} : MaskSpec{RemovePlane{*cell.k}};
      const ReconstructionMask mask = make_mask(ctx.encoded, ms);
      const PixelImage img = reconstruct(ctx.encoded, mask);
      write_png(output, img);
      row.output = output.string();
      row.psnr = psnr(ctx.reference, img);
      row.mask_cardinality = mask.cardinality();
      row.mask_total = mask.size();
      return;
    }
    case Experiment::kQuality: {
      row.q = *cell.q;
      const EncodedImage enc = quantize_image(ctx.transformed, QualityFactor(*cell.q));
      const PixelImage img = reconstruct(enc);
      write_png(output, img);
      row.output = output.string();
      row.psnr = psnr(ctx.reference, img);
      row.mask_cardinality = ReconstructionMask::full(enc).cardinality();
      row.mask_total = row.mask_cardinality;
      return;
    }
    default:
      break;
  }

  const ChannelConfig cfg = cell_channel(spec, cell, row.seed);
  fill_channel_columns(row, cfg);

  if (cell.variant == "conventional") {
    const ConventionalOutcome conv = conventional_baseline(ctx.transformed, cfg, &ctx.conventional);
    if (conv.failed()) {
      row.status = "failed:no_quality_fits";
      row.q.reset();
      TransmissionReport report;
      report.packets_total = 0;
      report.bytes_budget = cfg.bytes_budget();
      row.report = report;
      return;
    }
    row.q = conv.quality->value();
    finish_received(row, transmit(conv.packets, conv.protection, cfg), ctx.reference, output);
    return;
  }

  row.q = spec.quality;
  const ProtectedBitSet& prot = ctx.protected_bits(cfg.protection, cfg.fec_overhead_factor);
  finish_received(row, transmit(ctx.packets, prot, cfg), ctx.reference, output);

  if (spec.experiment == Experiment::kLatencyRate) {
    const ConventionalOutcome conv = conventional_baseline(ctx.transformed, cfg, &ctx.conventional);
    row.conventional_status = conv.failed() ? "failed" : "ok";
    if (!conv.failed()) row.conventional_q = conv.quality->value();
  }
}

// Runs fn(i) for i in [0, count) on up to `workers` threads.
template <typename Fn>
void parallel_for(size_t count, int workers, Fn fn) {
  const size_t threads = std::min<size_t>(std::max(workers, 1), count);
  if (threads <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::string failure(const std::exception& e) { return std::string("failed:") + e.what(); }

}  // namespace

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::kTopN:
      return "top_n";
    case Experiment::kRemoveK:
      return "remove_k";
    case Experiment::kQuality:
      return "quality";
    case Experiment::kPacketLoss:
      return "packet_loss";
    case Experiment::kBitError:
      return "bit_error";
    case Experiment::kLatencyRate:
      return "latency_rate";
    case Experiment::kConventionalVsProposed:
      return "conventional_vs_proposed";
  }
  return "";
}

Experiment parse_experiment(std::string_view text) {
  for (Experiment e : {Experiment::kTopN, Experiment::kRemoveK, Experiment::kQuality,
                       Experiment::kPacketLoss, Experiment::kBitError, Experiment::kLatencyRate,
                       Experiment::kConventionalVsProposed}) {
    if (to_string(e) == text) return e;
  }
  throw ConfigError("unknown experiment: " + std::string(text));
}

SweepSpec default_sweep(Experiment e) {
  SweepSpec spec;
  spec.experiment = e;
  spec.n_values.resize(64);
  std::iota(spec.n_values.begin(), spec.n_values.end(), 1);
  spec.k_values.resize(64);
  std::iota(spec.k_values.begin(), spec.k_values.end(), 0);
  spec.q_values = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  spec.drop_counts = {0, 1, 2, 3, 4, 5};
  spec.bit_error_probs = {0.0, 0.001, 0.01, 0.05, 0.1};
  spec.protections = {Protection::kNone, Protection::kDcSign, Protection::kDcFull};
  spec.deadlines_ms = {1, 5, 10, 15, 20, 25, 30, 40, 50};
  spec.rates_mbps = {1, 5, 10, 15, 20, 25, 30, 40, 50};
  return spec;
}

void validate(const SweepSpec& spec) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("sweep: ") + what);
  };
  require(spec.workers >= 1, "workers must be >= 1");
  require(!spec.out.empty(), "output directory required");
  QualityFactor{spec.quality};
  for (int n : spec.n_values) require(n >= 1 && n <= 64, "n must be in [1, 64]");
  for (int k : spec.k_values) require(k >= 0 && k <= 63, "k must be in [0, 63]");
  for (int q : spec.q_values) require(q >= 1 && q <= 100, "Q must be in [1, 100]");
  for (int d : spec.drop_counts) require(d >= 0 && d <= 5, "drop counts must be in [0, 5]");
  for (double p : spec.bit_error_probs) require(p >= 0.0 && p <= 1.0, "p must be in [0, 1]");
  for (double d : spec.deadlines_ms) require(d > 0.0, "deadlines must be positive");
  for (double r : spec.rates_mbps) require(r > 0.0, "rates must be positive");
  spec.channel.validate();
  if (uses_channel(spec.experiment) && spec.channel.bytes_budget() &&
      (spec.experiment == Experiment::kLatencyRate ||
       spec.experiment == Experiment::kConventionalVsProposed)) {
    throw ConfigError("sweep: latency_rate sets the budget per cell; omit rate/deadline");
  }
  require(!enumerate_cells(spec).empty(), "no parameter values to sweep");
}

fs::path manifest_path(const SweepSpec& spec) {
  return spec.out / std::string(to_string(spec.experiment)) / "manifest.csv";
}

std::vector<ManifestRow> run_sweep(const SweepSpec& spec) {
  validate(spec);
  const std::vector<CorpusEntry> corpus = list_corpus(spec.corpus);
  const std::vector<Cell> cells = enumerate_cells(spec);
  const fs::path root = spec.out / std::string(to_string(spec.experiment));
  const fs::path images = root / "images";

  std::vector<ManifestRow> rows(corpus.size() * cells.size());
  parallel_for(corpus.size(), spec.workers, [&](size_t i) {
    const CorpusEntry& entry = corpus[i];
    const fs::path dir = images / (entry.label.empty() ? "_" : entry.label);
    for (size_t c = 0; c < cells.size(); ++c) {
      ManifestRow& row = rows[i * cells.size() + c];
      row.source = entry.path.string();
      row.label = entry.label;
      row.experiment = std::string(to_string(spec.experiment));
      row.variant = cells[c].variant;
      row.n = cells[c].n;
      row.k = cells[c].k;
      row.q = spec.quality;
      row.seed = spec.seed ^ (i * cells.size() + c);
    }

    ImageContext ctx;
    ctx.entry = entry;
    try {
      const PixelImage img = read_image(entry.path);
      ctx.transformed = transform_image(img, spec.color_mode);
      ctx.reference = reference_image(img, ctx.transformed.color_mode);
      ctx.encoded = quantize_image(ctx.transformed, QualityFactor(spec.quality));
      ctx.packets = packetize(serialize(ctx.encoded));
      fs::create_directories(dir);
    } catch (const std::exception& e) {
      for (size_t c = 0; c < cells.size(); ++c) rows[i * cells.size() + c].status = failure(e);
      return;
    }

    for (size_t c = 0; c < cells.size(); ++c) {
      ManifestRow& row = rows[i * cells.size() + c];
      const fs::path output = dir / (entry_tag(entry) + "__" + cells[c].tag + ".png");
      try {
        run_cell(spec, ctx, cells[c], row, output);
      } catch (const std::exception& e) {
        row.status = failure(e);
        row.output.clear();
        row.psnr.reset();
      }
    }
  });

  write_manifest(manifest_path(spec), rows);
  return rows;
}

void apply_schedule(AugmentSpec& spec, std::string_view name) {
  auto value_after = [&](std::string_view prefix) {
    const std::string rest(name.substr(prefix.size()));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (rest.empty() || *end != '\0' || !(v >= 0.0 && v <= 1.0)) {
      throw ConfigError("schedule value must be in [0, 1]: " + std::string(name));
    }
    return v;
  };
  if (name == "none") {
    spec.schedule = DropSchedule::kVector;
    spec.drop_prob.assign(64, 0.0);
  } else if (name == "top_n_uniform") {
    spec.schedule = DropSchedule::kTopNUniform;
  } else if (name.starts_with("uniform:")) {
    spec.schedule = DropSchedule::kVector;
    spec.drop_prob.assign(64, value_after("uniform:"));
  } else if (name.starts_with("linear:")) {
    const double pmax = value_after("linear:");
    spec.schedule = DropSchedule::kVector;
    spec.drop_prob.resize(64);
    for (int k = 0; k < 64; ++k) spec.drop_prob[k] = pmax * k / 63.0;
  } else {
    throw ConfigError("unknown drop schedule: " + std::string(name));
  }
}

std::vector<ManifestRow> run_augment(const AugmentSpec& spec) {
  const QualityFactor q(spec.quality);
  if (spec.schedule == DropSchedule::kVector) {
    if (spec.drop_prob.size() != 64) throw ConfigError("augment: need 64 drop probabilities");
    for (double p : spec.drop_prob) {
      if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("augment: drop probability outside [0, 1]");
    }
  }
  if (spec.workers < 1) throw ConfigError("augment: workers must be >= 1");
  const std::vector<CorpusEntry> corpus = list_corpus(spec.corpus);

  std::vector<ManifestRow> rows(corpus.size());
  parallel_for(corpus.size(), spec.workers, [&](size_t i) {
    const CorpusEntry& entry = corpus[i];
    ManifestRow& row = rows[i];
    row.source = entry.path.string();
    row.label = entry.label;
    row.experiment = "augment";
    row.q = spec.quality;
    row.seed = spec.seed ^ i;
    try {
      const PixelImage img = read_image(entry.path);
      const EncodedImage enc = encode_image(img, q, spec.color_mode);
      ReconstructionMask mask;
      if (spec.schedule == DropSchedule::kTopNUniform) {
        Rng rng(row.seed);
        row.n = 1 + static_cast<int>(rng.below(64));
        mask = make_mask(enc, KeepTopN{*row.n});
      } else {
        mask = augment_drop(enc, spec.drop_prob, row.seed, spec.granularity);
      }
      const PixelImage out = reconstruct(enc, mask);
      const fs::path dir = spec.out / (entry.label.empty() ? "_" : entry.label);
      fs::create_directories(dir);
      const fs::path path = dir / (entry_tag(entry) + ".png");
      write_png(path, out);
      row.output = path.string();
      row.psnr = psnr(reference_image(img, enc.color_mode), out);
      row.mask_cardinality = mask.cardinality();
      row.mask_total = mask.size();
    } catch (const std::exception& e) {
      row.status = failure(e);
      std::fprintf(stderr, "augment: %s: %s\n", entry.path.c_str(), e.what());
    }
  });

  write_manifest(spec.out / "manifest.csv", rows);
  return rows;
}

}  // namespace semcomm::harness
