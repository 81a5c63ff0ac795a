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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "semcomm/bitstream.h"
#include "semcomm/channel.h"
#include "semcomm/codec.h"
#include "semcomm/dct.h"
#include "semcomm/harness/synthetic.h"
#include "semcomm/mask.h"
#include "semcomm/quantization.h"

namespace {

using namespace semcomm;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const std::vector<PixelImage>& fixtures() {
  static const std::vector<PixelImage> images = harness::fixture_corpus(20);
  return images;
}

// ---------------------------------------------------------------------------

Outcome zigzag_and_dct() {
  Outcome o;
  // Zigzag against an anti-diagonal walk.
  std::vector<int> walk;
  for (int d = 0; d < 15; ++d) {
    const int lo = std::max(0, d - 7);
    const int hi = std::min(d, 7);
    if (d % 2 == 0) {
      for (int r = hi; r >= lo; --r) walk.push_back(r * 8 + d - r);
    } else {
      for (int r = lo; r <= hi; ++r) walk.push_back(r * 8 + d - r);
    }
  }
  std::set<int> seen;
  for (int k = 0; k < 64; ++k) {
    const GridPosition p = zigzag_position(k);
    seen.insert(p.row * 8 + p.col);
    o.require(p.row * 8 + p.col == walk[k], "zigzag order differs at k=" + std::to_string(k));
    o.require(zigzag_index(p.row, p.col) == k, "zigzag inverse differs at k=" + std::to_string(k));
  }
  o.require(seen.size() == 64, "zigzag is not a bijection");

  std::mt19937_64 gen(20240601);
  std::uniform_real_distribution<double> dist(-128.0, 127.0);
  double worst_sample = 0.0;
  double worst_energy = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    Block8 s;
    for (double& v : s) v = dist(gen);
    const Block8 c = forward_dct8(s);
    const Block8 r = inverse_dct8(c);
    double es = 0.0, ec = 0.0;
    for (int i = 0; i < 64; ++i) {
      worst_sample = std::max(worst_sample, std::abs(r[i] - s[i]));
      es += s[i] * s[i];
      ec += c[i] * c[i];
    }
    worst_energy = std::max(worst_energy, std::abs(es - ec) / es);
  }
  o.require(worst_sample <= 1e-6, fmt("round trip error %.3g", worst_sample));
  o.require(worst_energy <= 1e-9, fmt("Parseval relative error %.3g", worst_energy));
  if (o.pass) o.detail = fmt("10000 blocks, max sample error %.2g, max energy error %.2g", worst_sample, worst_energy);
  return o;
}

Outcome quantizer() {
  static constexpr int kLuma50[64] = {
      16, 11, 10, 16, 24,  40,  51,  61,  12, 12, 14, 19, 26,  58,  60,  55,
      14, 13, 16, 24, 40,  57,  69,  56,  14, 17, 22, 29, 51,  87,  80,  62,
      18, 22, 37, 56, 68,  109, 103, 77,  24, 35, 55, 64, 81,  104, 113, 92,
      49, 64, 78, 87, 103, 121, 120, 101, 72, 92, 95, 98, 112, 100, 103, 99,
  };
  static constexpr int kChroma50[64] = {
      17, 18, 24, 47, 99, 99, 99, 99, 18, 21, 26, 66, 99, 99, 99, 99,
      24, 26, 56, 99, 99, 99, 99, 99, 47, 66, 99, 99, 99, 99, 99, 99,
      99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99,
      99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99,
  };
  Outcome o;
  const QuantMatrix l50 = quantization_matrix(QualityFactor(50), QuantTable::kLuma);
  const QuantMatrix c50 = quantization_matrix(QualityFactor(50), QuantTable::kChroma);
  const QuantMatrix l100 = quantization_matrix(QualityFactor(100), QuantTable::kLuma);
  const QuantMatrix c100 = quantization_matrix(QualityFactor(100), QuantTable::kChroma);
  for (int i = 0; i < 64; ++i) {
    o.require(l50[i] == kLuma50[i], "Q=50 luma differs at " + std::to_string(i));
    o.require(c50[i] == kChroma50[i], "Q=50 chroma differs at " + std::to_string(i));
    o.require(l100[i] == 1 && c100[i] == 1, "Q=100 entry is not 1 at " + std::to_string(i));
  }
  if (o.pass) o.detail = "Q=50 equals base tables, Q=100 all ones";
  return o;
}

Outcome lossless_path() {
  Outcome o;
  int worst = 0;
  for (const PixelImage& img : fixtures()) {
    const EncodedImage enc = encode_image(img, QualityFactor(100), ColorMode::kYCbCr444);
    const auto received = depacketize(packetize(serialize(enc)));
    if (!received) {
      o.require(false, "depacketize failed");
      continue;
    }
    o.require(received->mask.all(), "mask incomplete without corruption");
    const PixelImage out = reconstruct(received->image, received->mask);
    o.require(out.width == img.width && out.height == img.height && out.channels == img.channels,
              "reconstruction shape differs");
    for (size_t i = 0; i < img.samples.size() && i < out.samples.size(); ++i) {
      worst = std::max(worst, std::abs(int{img.samples[i]} - int{out.samples[i]}));
    }
  }
  o.require(worst <= 4, "max deviation " + std::to_string(worst));
  if (o.pass) o.detail = "20 images, max deviation " + std::to_string(worst);
  return o;
}

Outcome progressive_refinement() {
  Outcome o;
  int violations = 0;
  double min_gain = INFINITY;
  for (const PixelImage& img : fixtures()) {
    const TransformedImage t = transform_image(img, ColorMode::kYCbCr444);
    const EncodedImage enc = quantize_image(t, QualityFactor(90));
    double prev = INFINITY;
    for (int n = 1; n <= 64; ++n) {
      const double e = coefficient_mse(t, enc, make_mask(enc, KeepTopN{n}));
      if (e > prev) ++violations;
      prev = e;
    }
    const PixelImage ref = reference_image(img, enc.color_mode);
    const double top1 = psnr(ref, reconstruct(enc, make_mask(enc, KeepTopN{1})));
    const double top5 = psnr(ref, reconstruct(enc, make_mask(enc, KeepTopN{5})));
    min_gain = std::min(min_gain, top5 - top1);
  }
  o.require(violations == 0, std::to_string(violations) + " monotonicity violations");
  o.require(min_gain > 0.0, fmt("top-5 does not beat top-1 (gain %.3f dB)", min_gain));
  if (o.pass) o.detail = fmt("0 violations over 20x64 steps, min top5-top1 gain %.2f dB", min_gain);
  return o;
}

std::vector<Packet> raw_packets(size_t n) {
  std::vector<uint8_t> bytes(n * kPacketPayloadBytes);
  for (size_t i = 0; i < bytes.size(); ++i) bytes[i] = static_cast<uint8_t>(i * 167 + 3);
  return packetize(bytes);
}

Outcome channel_statistics() {
  Outcome o;
  std::string detail;
  // Bit flips, counted by comparing payloads.
  const auto clean = raw_packets(130);
  const ProtectedBitSet none(clean.size() * kPacketPayloadBytes, 1.0);
  const double bits = double(clean.size() - 1) * kPacketPayloadBytes * 8;
  o.require(bits >= 1e6, "fewer than 1e6 payload bits");
  for (double p : {0.01, 0.05, 0.1}) {
    ChannelConfig cfg;
    cfg.bit_error_prob = p;
    cfg.seed = 314159;
    auto noisy = clean;
    const uint64_t reported = inject_bit_errors(noisy, none, cfg);
    uint64_t counted = 0;
    for (size_t i = 0; i < clean.size(); ++i) {
      for (size_t j = 0; j < kPacketPayloadBytes; ++j) {
        counted += std::popcount(static_cast<unsigned>(clean[i].payload[j] ^ noisy[i].payload[j]));
      }
    }
    const double z = (double(counted) - p * bits) / std::sqrt(bits * p * (1 - p));
    o.require(counted == reported, "reported flips differ from payload differences");
    o.require(std::abs(z) <= 3.0, fmt("p=%g flip rate off by %.2f sigma", p, z));
    detail += fmt("p=%g z=%+.2f; ", p, z);
  }
  // Drop exactness.
  const auto packets = raw_packets(40);
  for (int n = 0; n <= 5; ++n) {
    for (uint64_t seed = 0; seed < 200; ++seed) {
      ChannelConfig cfg;
      cfg.loss = DropCount{n};
      cfg.seed = seed;
      const auto kept = drop_packets(packets, cfg);
      std::set<uint32_t> seqs;
      for (const Packet& p : kept) seqs.insert(p.seq);
      o.require(kept.size() == packets.size() - n && seqs.size() == kept.size(),
                "drop_count removed the wrong number of packets");
      o.require(seqs.count(0) == 1, "packet 0 was dropped");
    }
  }
  // Determinism of the whole pipeline.
  const EncodedImage enc = encode_image(fixtures()[0], QualityFactor(90), ColorMode::kYCbCr444);
  const auto stream = packetize(serialize(enc));
  const ProtectedBitSet prot = protected_bit_set(enc, Protection::kDcSign);
  ChannelConfig cfg;
  cfg.bit_error_prob = 0.05;
  cfg.loss = DropCount{3};
  cfg.protection = Protection::kDcSign;
  cfg.seed = 2718;
  const Transmission a = transmit(stream, prot, cfg);
  const Transmission b = transmit(stream, prot, cfg);
  bool same = a.received.size() == b.received.size();
  for (size_t i = 0; same && i < a.received.size(); ++i) same = to_wire(a.received[i]) == to_wire(b.received[i]);
  o.require(same, "identical seeds gave different corrupted streams");
  if (o.pass) o.detail = detail + "drops exact; reruns byte-identical";
  return o;
}

Outcome protection_accounting() {
  Outcome o;
  double sign_max = 0.0, full_min = 1.0, full_max = 0.0;
  int checked = 0;
  for (size_t i = 0; i < fixtures().size(); ++i) {
    const EncodedImage enc = encode_image(fixtures()[i], QualityFactor(90), ColorMode::kYCbCr444);
    const std::vector<uint8_t> stream = serialize(enc);
    const double stream_bits = 8.0 * stream.size();
    const ProtectedBitSet full = protected_bit_set(enc, Protection::kDcFull);
    sign_max = std::max(sign_max, protected_bit_set(enc, Protection::kDcSign).size() / stream_bits);
    full_min = std::min(full_min, full.size() / stream_bits);
    full_max = std::max(full_max, full.size() / stream_bits);

    ChannelConfig cfg;
    cfg.bit_error_prob = 0.1;
    cfg.protection = Protection::kDcFull;
    cfg.seed = 1000 + i;
    const Transmission t = transmit(packetize(stream), full, cfg);
    const auto r = depacketize(t.received);
    o.require(r.has_value(), "undecodable with dc_full at p=0.1");
    if (!r) continue;
    for (int ch = 0; ch < enc.channels; ++ch) {
      o.require(r->image.plane(0, ch) == enc.plane(0, ch), "plane 0 corrupted under dc_full");
      for (int b = 0; b < enc.block_count(); ++b) o.require(r->mask.present(ch, 0, b), "plane 0 missing");
    }
    ++checked;
  }
  o.require(sign_max <= 0.007, fmt("dc_sign share %.3f%%", 100 * sign_max));
  o.require(full_min >= 0.02 && full_max <= 0.06, fmt("dc_full share %.2f%%..%.2f%%", 100 * full_min, 100 * full_max));
  if (o.pass) {
    o.detail = fmt("dc_sign <= %.2f%%, dc_full %.2f%%..%.2f%%", 100 * sign_max, 100 * full_min, 100 * full_max) +
               ", plane 0 intact in " + std::to_string(checked) + " images at p=0.1";
  }
  return o;
}

ChannelConfig budget(uint64_t rate_bps, Duration deadline, Duration compute = Duration{0}) {
  ChannelConfig cfg;
  cfg.rate_bps = rate_bps;
  cfg.deadline = deadline;
  cfg.compute_time = compute;
  return cfg;
}

Outcome budget_model() {
  using std::chrono::milliseconds;
  Outcome o;
  struct Case {
    uint64_t rate;
    Duration deadline;
    Duration compute;
    uint64_t bytes;  // by hand
  } const cases[] = {
      {1'000'000, milliseconds(1), Duration{0}, 125},
      {50'000'000, milliseconds(50), Duration{0}, 312'500},
      {10'000'000, milliseconds(20), Duration{0}, 25'000},
      {5'000'000, milliseconds(30), Duration{0}, 18'750},
      {25'000'000, milliseconds(10), Duration{0}, 31'250},
      {40'000'000, milliseconds(15), Duration{0}, 75'000},
      {1'000'000, milliseconds(50), Duration{0}, 6'250},
      {20'000'000, milliseconds(5), milliseconds(2), 7'500},
      {30'000'000, milliseconds(40), std::chrono::microseconds(500), 148'125},
      {3'000'001, milliseconds(1), Duration{0}, 375},
  };
  for (const Case& c : cases) {
    const auto got = budget(c.rate, c.deadline, c.compute).bytes_budget();
    o.require(got == c.bytes, "budget mismatch for rate " + std::to_string(c.rate));
  }

  // (1 ms, 1 Mbps): 125 bytes cannot carry a 1024-byte packet.
  const ChannelConfig tiny = budget(1'000'000, milliseconds(1));
  size_t proposed_partial = 0, proposed_failed = 0, conventional_failed = 0;
  for (const PixelImage& img : fixtures()) {
    const EncodedImage enc = encode_image(img, QualityFactor(90), ColorMode::kYCbCr444);
    const Transmission t = transmit(packetize(serialize(enc)), protected_bit_set(enc, Protection::kNone), tiny);
    if (!t.decodable) {
      ++proposed_failed;
    } else if (t.report.packets_sent < t.report.packets_total) {
      ++proposed_partial;
    }
    conventional_failed += conventional_baseline(img, ColorMode::kYCbCr444, tiny).failed();
  }
  o.require(proposed_failed + proposed_partial == fixtures().size(), "proposed delivered everything in 125 bytes");
  o.require(conventional_failed == fixtures().size(), "conventional succeeded in 125 bytes");

  // Selected Q against budget, and the band where only the proposed
  // pipeline yields an image.
  bool monotone = true;
  size_t band_images = 0;
  for (const PixelImage& img : fixtures()) {
    const TransformedImage t = transform_image(img, ColorMode::kYCbCr444);
    ConventionalCache cache;
    int prev = 0;
    for (uint64_t bytes = 512; bytes <= 400'000; bytes = bytes * 5 / 4) {
      const ConventionalOutcome out = conventional_baseline(t, budget(8 * bytes, std::chrono::seconds(1)), &cache);
      const int q = out.failed() ? 0 : out.quality->value();
      monotone = monotone && q >= prev;
      prev = q;
    }
    const EncodedImage enc = quantize_image(t, QualityFactor(90));
    const auto packets = packetize(serialize(enc));
    for (uint64_t bytes = kPacketBytes; bytes < 20 * kPacketBytes; bytes += kPacketBytes) {
      const ChannelConfig cfg = budget(8 * bytes, std::chrono::seconds(1));
      if (!conventional_baseline(t, cfg, &cache).failed()) break;
      const Transmission tx = transmit(packets, protected_bit_set(enc, Protection::kNone), cfg);
      const auto r = tx.decodable ? depacketize(tx.received) : std::nullopt;
      if (r && r->mask.cardinality() > 0) {
        ++band_images;
        break;
      }
    }
  }
  o.require(monotone, "selected Q decreased as the budget grew");
  o.require(band_images > 0, "no budget where conventional fails but proposed decodes");
  if (o.pass) {
    o.detail = "10 hand-checked budgets; (1 ms, 1 Mbps): proposed " + std::to_string(proposed_failed) + " failed/" +
               std::to_string(proposed_partial) + " partial, conventional " + std::to_string(conventional_failed) +
               " failed; Q monotone; fail-vs-decode band in " + std::to_string(band_images) + "/20 images";
  }
  return o;
}

struct Criterion {
  const char* name;
  double limit_s;  // 0: no limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"zigzag/DCT correctness", 5.0, zigzag_and_dct},
      {"quantizer formula", 0.0, quantizer},
      {"lossless path", 30.0, lossless_path},
      {"progressive refinement", 120.0, progressive_refinement},
      {"channel statistics", 0.0, channel_statistics},
      {"protection accounting", 0.0, protection_accounting},
      {"budget model", 0.0, budget_model},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.limit_s > 0.0 && secs > c.limit_s) {
      o.detail = fmt("took %.2f s, limit %.0f s", secs, c.limit_s) + (o.pass ? "" : "; " + o.detail);
      o.pass = false;
    }
    failed += !o.pass;
    std::printf("%s  %-24s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", int(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
