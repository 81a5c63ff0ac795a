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

#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "semcomm/codec.h"
#include "semcomm/error.h"
#include "semcomm/harness/corpus.h"
#include "semcomm/harness/manifest.h"
#include "semcomm/harness/run_config.h"
#include "semcomm/harness/sweep.h"
#include "semcomm/harness/synthetic.h"
#include "semcomm/image_io.h"
#include "semcomm/mask.h"
#include "test_support.h"

namespace semcomm::harness {
namespace {

namespace fs = std::filesystem;
using semcomm::testing::TempDir;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Two classes, two small images each.
void small_corpus(const fs::path& root) {
  int i = 0;
  for (const char* label : {"rose", "tulip"}) {
    fs::create_directories(root / label);
    for (int j = 0; j < 2; ++j, ++i) {
      const PixelImage img = synthesize_image({.width = 64 + 8 * i, .height = 40 + 3 * i, .label = i % 5,
                                               .seed = 70u + i, .color = i != 3});
      write_png(root / label / (std::string(label) + "_" + std::to_string(j) + ".png"), img);
    }
  }
}

TEST(RunConfig, ParsesUnitsAndComments) {
  const ChannelConfig cfg = parse_run_config(R"(
# link
rate = 20Mbps
deadline = 30ms   # end to end
compute_time = 500us
bit_error_prob = 0.01
drop_count = 2
protection = dc_full
fec_overhead_factor = 1.5
seed = 18446744073709551615
)");
  EXPECT_EQ(cfg.rate_bps, 20'000'000u);
  EXPECT_EQ(cfg.deadline, Duration(30'000'000));
  EXPECT_EQ(cfg.compute_time, Duration(500'000));
  EXPECT_DOUBLE_EQ(cfg.bit_error_prob, 0.01);
  EXPECT_EQ(std::get<DropCount>(cfg.loss).n, 2);
  EXPECT_EQ(cfg.protection, Protection::kDcFull);
  EXPECT_DOUBLE_EQ(cfg.fec_overhead_factor, 1.5);
  EXPECT_EQ(cfg.seed, UINT64_MAX);
  EXPECT_EQ(cfg.bytes_budget(), 73'750u);
}

TEST(RunConfig, Units) {
  EXPECT_EQ(parse_rate("1kbps"), 1000u);
  EXPECT_EQ(parse_rate("2.5Mbps"), 2'500'000u);
  EXPECT_EQ(parse_rate("1Gbps"), 1'000'000'000u);
  EXPECT_EQ(parse_rate("300"), 300u);
  EXPECT_EQ(parse_duration("2"), Duration(2'000'000'000));
  EXPECT_EQ(parse_duration("1.5ms"), Duration(1'500'000));
  EXPECT_EQ(parse_duration("7ns"), Duration(7));
  EXPECT_THROW(parse_rate("5 furlongs"), ConfigError);
  EXPECT_THROW(parse_rate("0"), ConfigError);
  EXPECT_THROW(parse_duration("-1ms"), ConfigError);
  EXPECT_THROW(parse_probability("1.01"), ConfigError);
}

TEST(RunConfig, RejectsBadInput) {
  EXPECT_THROW(parse_run_config("colour = red"), ConfigError);
  EXPECT_THROW(parse_run_config("rate 5Mbps"), ConfigError);
  EXPECT_THROW(parse_run_config("rate = 5Mbps"), ConfigError);  // no deadline
  EXPECT_THROW(parse_run_config("drop_count = -1"), ConfigError);
  EXPECT_THROW(parse_run_config("seed = -3"), ConfigError);
}

TEST(RunConfig, LoadsFromFile) {
  TempDir dir("runcfg");
  std::ofstream(dir.path() / "run.cfg") << "drop_rate = 0.25\nseed = 9\n";
  const ChannelConfig cfg = load_run_file(dir.path() / "run.cfg");
  EXPECT_DOUBLE_EQ(std::get<DropRate>(cfg.loss).r, 0.25);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_THROW(load_run_file(dir.path() / "missing.cfg"), Error);
}

TEST(Manifest, RoundTripsThroughCsv) {
  TempDir dir("manifest");
  ManifestRow ok;
  ok.source = "a dir/with,comma \"quoted\".png";
  ok.label = "rose";
  ok.experiment = "bit_error";
  ok.bit_error_prob = 0.001;
  ok.protection = Protection::kDcSign;
  ok.seed = 42;
  ok.output = "out.png";
  ok.psnr = 31.234567891;
  ok.report = TransmissionReport{};
  ok.report->packets_total = 10;
  ok.report->packets_sent = 10;
  ok.report->packets_delivered = 9;
  ManifestRow failed = ok;
  failed.status = "failed:undecodable";
  failed.output.clear();
  failed.psnr.reset();
  write_manifest(dir.path() / "m.csv", {ok, failed});

  const CsvTable t = read_csv(dir.path() / "m.csv");
  EXPECT_EQ(t.header, manifest_columns());
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][t.column("source")], ok.source);
  EXPECT_EQ(t.rows[0][t.column("psnr")], "31.2346");
  EXPECT_EQ(t.rows[0][t.column("bit_error_prob")], "0.001");
  EXPECT_EQ(t.rows[0][t.column("protection")], "dc_sign");
  EXPECT_EQ(t.rows[0][t.column("packets_delivered")], "9");
  EXPECT_EQ(t.rows[0][t.column("n")], "");
  EXPECT_EQ(t.rows[1][t.column("status")], "failed:undecodable");
  EXPECT_EQ(t.rows[1][t.column("output")], "");
  EXPECT_EQ(t.rows[1][t.column("psnr")], "");
}

TEST(Manifest, FormatsReals) {
  EXPECT_EQ(format_real(1.0 / 3.0), "0.333333");
  EXPECT_EQ(format_real(1e-7), "1e-07");
  EXPECT_EQ(format_real(INFINITY), "inf");
  EXPECT_EQ(csv_escape("plain"), "plain");
  EXPECT_EQ(csv_escape("a\"b"), "\"a\"\"b\"");
}

TEST(Corpus, ListsByLabel) {
  TempDir dir("corpus");
  small_corpus(dir.path());
  std::ofstream(dir.path() / "rose" / "notes.txt") << "x";
  const auto entries = list_corpus(dir.path());
  ASSERT_EQ(entries.size(), 4u);
  EXPECT_EQ(entries[0].label, "rose");
  EXPECT_EQ(entries[3].label, "tulip");
  EXPECT_EQ(entry_tag(entries[0]), "rose_0_png");
  EXPECT_THROW(list_corpus(dir.path() / "nope"), ConfigError);
  fs::create_directories(dir.path() / "empty");
  EXPECT_THROW(list_corpus(dir.path() / "empty"), ConfigError);
}

TEST(Synthetic, CorpusLayout) {
  TempDir dir("synth");
  write_synthetic_corpus(dir.path(), 2, 48, 32, 5);
  const auto entries = list_corpus(dir.path());
  EXPECT_EQ(entries.size(), 10u);
  std::set<std::string> labels;
  for (const auto& e : entries) labels.insert(e.label);
  EXPECT_EQ(labels.size(), 5u);
  const PixelImage img = read_image(entries[0].path);
  EXPECT_EQ(img.width, 48);
  EXPECT_EQ(img.height, 32);
  EXPECT_EQ(synthesize_image({.seed = 3}), synthesize_image({.seed = 3}));
}

SweepSpec small_sweep(Experiment e, const fs::path& corpus, const fs::path& out) {
  SweepSpec s = default_sweep(e);
  s.corpus = corpus;
  s.out = out;
  s.seed = 77;
  s.workers = 2;
  s.n_values = {1, 5, 64};
  s.k_values = {0, 7};
  s.q_values = {10, 90};
  s.drop_counts = {0, 1};
  s.bit_error_probs = {0.0, 0.05};
  s.protections = {Protection::kNone, Protection::kDcFull};
  s.deadlines_ms = {1, 20};
  s.rates_mbps = {1, 10};
  return s;
}

std::string param_key(const CsvTable& t, const std::vector<std::string>& row) {
  std::string key;
  for (const char* c : {"source", "experiment", "variant", "n", "k", "q", "drop_count", "drop_rate",
                        "bit_error_prob", "rate_bps", "deadline_ms", "compute_time_ms", "protection", "seed"}) {
    key += row[t.column(c)] + "|";
  }
  return key;
}

TEST(Sweep, ManifestIsCompleteAndUnique) {
  TempDir dir("sweep");
  small_corpus(dir.path() / "corpus");
  const std::map<Experiment, size_t> cells = {
      {Experiment::kTopN, 3},        {Experiment::kRemoveK, 2},     {Experiment::kQuality, 2},
      {Experiment::kPacketLoss, 2},  {Experiment::kBitError, 4},    {Experiment::kLatencyRate, 4},
      {Experiment::kConventionalVsProposed, 8},
  };
  for (const auto& [e, per_image] : cells) {
    const SweepSpec spec = small_sweep(e, dir.path() / "corpus", dir.path() / "out");
    const auto rows = run_sweep(spec);
    EXPECT_EQ(rows.size(), 4 * per_image) << to_string(e);
    const CsvTable t = read_csv(manifest_path(spec));
    ASSERT_EQ(t.rows.size(), rows.size());
    std::set<std::string> keys, outputs;
    for (const auto& r : t.rows) {
      EXPECT_TRUE(keys.insert(param_key(t, r)).second) << param_key(t, r);
      const std::string& out = r[t.column("output")];
      if (r[t.column("status")] == "ok") {
        EXPECT_TRUE(fs::exists(out)) << out;
        EXPECT_TRUE(outputs.insert(out).second);
        EXPECT_FALSE(r[t.column("psnr")].empty());
      } else {
        EXPECT_TRUE(out.empty());
        EXPECT_TRUE(r[t.column("psnr")].empty());
      }
    }
    size_t pngs = 0;
    for (const auto& f : fs::recursive_directory_iterator(manifest_path(spec).parent_path())) {
      pngs += f.path().extension() == ".png";
    }
    EXPECT_EQ(pngs, outputs.size());
  }
}

TEST(Sweep, RerunIsIdentical) {
  TempDir dir("rerun");
  small_corpus(dir.path() / "corpus");
  SweepSpec spec = small_sweep(Experiment::kBitError, dir.path() / "corpus", dir.path() / "a");
  run_sweep(spec);
  const std::string first = slurp(manifest_path(spec));
  spec.workers = 1;
  run_sweep(spec);
  EXPECT_EQ(slurp(manifest_path(spec)), first);
}

TEST(Sweep, KeepingAllPlanesMatchesFullReconstruction) {
  TempDir dir("topn");
  small_corpus(dir.path() / "corpus");
  const SweepSpec spec = small_sweep(Experiment::kTopN, dir.path() / "corpus", dir.path() / "out");
  for (const ManifestRow& row : run_sweep(spec)) {
    if (row.n != 64) continue;
    const PixelImage img = read_image(row.source);
    const EncodedImage enc = encode_image(img, QualityFactor(90), ColorMode::kYCbCr444);
    EXPECT_EQ(format_real(*row.psnr), format_real(psnr(reference_image(img, enc.color_mode), reconstruct(enc))));
    EXPECT_EQ(read_image(row.output), reconstruct(enc));
  }
}

TEST(Sweep, LatencyGridRespectsBudget) {
  TempDir dir("latency");
  small_corpus(dir.path() / "corpus");
  const SweepSpec spec = small_sweep(Experiment::kLatencyRate, dir.path() / "corpus", dir.path() / "out");
  for (const ManifestRow& row : run_sweep(spec)) {
    ASSERT_TRUE(row.report && row.report->bytes_budget);
    EXPECT_LE(row.report->packets_sent * 1024 + row.report->protected_bytes, *row.report->bytes_budget);
    ASSERT_TRUE(row.conventional_status.has_value());
    if (row.deadline_ms == 1.0 && row.rate_bps == 1'000'000u) {
      EXPECT_EQ(row.status, "failed:undecodable");
      EXPECT_NE(*row.conventional_status, "ok");
      EXPECT_FALSE(row.conventional_q.has_value());
    }
  }
}

TEST(Sweep, RejectsOutOfDomainSpecs) {
  SweepSpec s = default_sweep(Experiment::kTopN);
  s.corpus = "c";
  s.out = "o";
  s.n_values = {0};
  EXPECT_THROW(validate(s), ConfigError);
  s = default_sweep(Experiment::kQuality);
  s.q_values = {101};
  EXPECT_THROW(validate(s), ConfigError);
  s = default_sweep(Experiment::kPacketLoss);
  s.drop_counts = {6};
  EXPECT_THROW(validate(s), ConfigError);
  s = default_sweep(Experiment::kBitError);
  s.bit_error_probs = {1.5};
  EXPECT_THROW(validate(s), ConfigError);
  s = default_sweep(Experiment::kLatencyRate);
  s.rates_mbps = {0};
  EXPECT_THROW(validate(s), ConfigError);
  EXPECT_THROW(parse_experiment("top_k"), ConfigError);
}

TEST(Sweep, DefaultAxes) {
  EXPECT_EQ(default_sweep(Experiment::kTopN).n_values.size(), 64u);
  EXPECT_EQ(default_sweep(Experiment::kPacketLoss).drop_counts, (std::vector<int>{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(default_sweep(Experiment::kLatencyRate).deadlines_ms.front(), 1.0);
  EXPECT_EQ(default_sweep(Experiment::kLatencyRate).rates_mbps.back(), 50.0);
}

AugmentSpec small_augment(const fs::path& corpus, const fs::path& out, uint64_t seed) {
  AugmentSpec s;
  s.corpus = corpus;
  s.out = out;
  s.seed = seed;
  s.workers = 2;
  return s;
}

TEST(Augment, ZeroDropGivesFullReconstruction) {
  TempDir dir("augzero");
  small_corpus(dir.path() / "corpus");
  const auto rows = run_augment(small_augment(dir.path() / "corpus", dir.path() / "out", 1));
  ASSERT_EQ(rows.size(), 4u);
  for (const ManifestRow& row : rows) {
    const EncodedImage enc = encode_image(read_image(row.source), QualityFactor(90), ColorMode::kYCbCr444);
    EXPECT_EQ(read_image(row.output), reconstruct(enc));
    EXPECT_EQ(row.mask_cardinality, row.mask_total);
  }
  EXPECT_TRUE(fs::exists(dir.path() / "out" / "manifest.csv"));
  EXPECT_TRUE(fs::exists(dir.path() / "out" / "rose"));
}

TEST(Augment, SeedsChangeMasks) {
  TempDir dir("augseed");
  small_corpus(dir.path() / "corpus");
  AugmentSpec a = small_augment(dir.path() / "corpus", dir.path() / "a", 1);
  apply_schedule(a, "uniform:0.3");
  AugmentSpec b = a;
  b.out = dir.path() / "b";
  b.seed = 2;
  AugmentSpec c = a;
  c.out = dir.path() / "c";
  const auto ra = run_augment(a);
  const auto rb = run_augment(b);
  const auto rc = run_augment(c);
  int differ = 0;
  for (size_t i = 0; i < ra.size(); ++i) {
    differ += ra[i].mask_cardinality != rb[i].mask_cardinality;
    EXPECT_EQ(ra[i].mask_cardinality, rc[i].mask_cardinality);
    EXPECT_EQ(slurp(ra[i].output), slurp(rc[i].output));
  }
  EXPECT_EQ(differ, 4);
}

TEST(Augment, TopNUniformKeepsPrefixes) {
  TempDir dir("augtopn");
  small_corpus(dir.path() / "corpus");
  AugmentSpec spec = small_augment(dir.path() / "corpus", dir.path() / "out", 5);
  apply_schedule(spec, "top_n_uniform");
  for (const ManifestRow& row : run_augment(spec)) {
    ASSERT_TRUE(row.n.has_value());
    EXPECT_GE(*row.n, 1);
    EXPECT_LE(*row.n, 64);
    EXPECT_EQ(*row.mask_cardinality * 64, int64_t{*row.n} * *row.mask_total);
  }
}

TEST(Augment, Schedules) {
  AugmentSpec s;
  apply_schedule(s, "linear:0.6");
  EXPECT_DOUBLE_EQ(s.drop_prob[0], 0.0);
  EXPECT_DOUBLE_EQ(s.drop_prob[63], 0.6);
  EXPECT_LE(s.drop_prob[10], s.drop_prob[11]);
  apply_schedule(s, "none");
  EXPECT_DOUBLE_EQ(s.drop_prob[63], 0.0);
  EXPECT_THROW(apply_schedule(s, "uniform:2"), ConfigError);
  EXPECT_THROW(apply_schedule(s, "cosine"), ConfigError);
}

}  // namespace
}  // namespace semcomm::harness
