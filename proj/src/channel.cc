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

#include "semcomm/channel.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "semcomm/error.h"
#include "semcomm/rng.h"

namespace semcomm {
namespace {

// Sub-seed streams so stages never share random draws.
constexpr uint64_t kDropStream = 1;
constexpr uint64_t kBitErrorStream = 2;

uint64_t bytes_for_bits(double factor, uint64_t bits) {
  return static_cast<uint64_t>(std::ceil(factor * static_cast<double>(bits) / 8.0));
}

}  // namespace

std::string_view to_string(Protection p) {
  switch (p) {
    case Protection::kNone:
      return "none";
    case Protection::kDcSign:
      return "dc_sign";
    case Protection::kDcFull:
      return "dc_full";
  }
  return "none";
}

Protection parse_protection(std::string_view text) {
  if (text == "none") return Protection::kNone;
  if (text == "dc_sign") return Protection::kDcSign;
  if (text == "dc_full") return Protection::kDcFull;
  throw ConfigError("unknown protection mode: " + std::string(text));
}

void ChannelConfig::validate() const {
  if (!(bit_error_prob >= 0.0 && bit_error_prob <= 1.0)) {
    throw ConfigError("bit_error_prob must be in [0, 1]");
  }
  if (const auto* d = std::get_if<DropCount>(&loss); d && d->n < 0) {
    throw ConfigError("drop_count must be non-negative");
  }
  if (const auto* r = std::get_if<DropRate>(&loss); r && !(r->r >= 0.0 && r->r <= 1.0)) {
    throw ConfigError("drop_rate must be in [0, 1]");
  }
  if (compute_time.count() < 0) throw ConfigError("compute_time must be non-negative");
  if (deadline) {
    if (*deadline < compute_time) throw ConfigError("deadline must be >= compute_time");
    if (!rate_bps || *rate_bps == 0) throw ConfigError("rate must be > 0 when a deadline is set");
  }
  if (rate_bps && !deadline) throw ConfigError("rate given without a deadline");
  if (!(fec_overhead_factor >= 0.0)) throw ConfigError("fec_overhead_factor must be >= 0");
}

std::optional<uint64_t> ChannelConfig::bytes_budget() const {
  if (!deadline || !rate_bps) return std::nullopt;
  using u128 = unsigned __int128;
  const u128 window_ns = static_cast<u128>((*deadline - compute_time).count());
  const u128 bits_times_ns = window_ns * *rate_bps;
  return static_cast<uint64_t>(bits_times_ns / (u128{8} * 1'000'000'000u));
}

ProtectedBitSet::ProtectedBitSet(size_t stream_bytes, double fec_overhead_factor)
    : bits_(stream_bytes * 8, false),
      per_packet_((stream_bytes + kPacketPayloadBytes - 1) / kPacketPayloadBytes, 0),
      factor_(fec_overhead_factor) {}

void ProtectedBitSet::add(uint64_t stream_bit) {
  if (stream_bit >= bits_.size()) throw ConfigError("protected bit outside stream");
  if (bits_[stream_bit]) return;
  bits_[stream_bit] = true;
  ++count_;
  ++per_packet_[stream_bit / 8 / kPacketPayloadBytes];
}

uint64_t ProtectedBitSet::overhead_bytes() const { return bytes_for_bits(factor_, count_); }

uint64_t ProtectedBitSet::overhead_bytes_for_prefix(size_t packet_count) const {
  const size_t end = std::min(packet_count, per_packet_.size());
  if (end <= 1) return 0;
  const uint64_t bits =
      std::accumulate(per_packet_.begin() + 1, per_packet_.begin() + end, uint64_t{0});
  return bytes_for_bits(factor_, bits);
}

ProtectedBitSet protected_bit_set(const EncodedImage& enc, Protection mode,
                                  double fec_overhead_factor) {
  const StreamLayout layout = StreamLayout::from_image(enc);
  ProtectedBitSet set(layout.total_bytes, fec_overhead_factor);
  if (mode == Protection::kNone) return set;
  // Plane 0 of every channel occupies slots 0..channels-1.
  for (int ch = 0; ch < enc.channels; ++ch) {
    const size_t p = static_cast<size_t>(ch);
    const int width = layout.plane_width[p];
    for (size_t j = 0; j < layout.plane_count[p]; ++j) {
      const uint64_t first = layout.value_bit(p, j);
      const int bits = mode == Protection::kDcSign ? std::min(width, 1) : width;
      for (int i = 0; i < bits; ++i) set.add(first + i);
    }
  }
  return set;
}

Truncation truncate_to_budget(std::span<const Packet> packets, const ProtectedBitSet& protection,
                              const ChannelConfig& cfg) {
  cfg.validate();
  Truncation out;
  out.report.packets_total = packets.empty() ? 0 : packets.front().total;
  out.report.bytes_budget = cfg.bytes_budget();

  size_t count = packets.size();
  if (out.report.bytes_budget) {
    const uint64_t budget = *out.report.bytes_budget;
    count = 0;
    while (count < packets.size()) {
      const uint64_t cost = (count + 1) * kPacketBytes + protection.overhead_bytes_for_prefix(count + 1);
      if (cost > budget) break;
      ++count;
    }
  }
  out.packets.assign(packets.begin(), packets.begin() + count);
  out.decodable = count > 0 && packets.front().seq == 0;
  out.report.packets_sent = count;
  out.report.packets_delivered = count;
  out.report.protected_bytes = protection.overhead_bytes_for_prefix(count);
  return out;
}

std::vector<Packet> drop_packets(std::span<const Packet> packets, const ChannelConfig& cfg) {
  cfg.validate();
  std::vector<size_t> droppable;
  for (size_t i = 0; i < packets.size(); ++i) {
    if (packets[i].seq != 0) droppable.push_back(i);
  }
  std::vector<bool> dropped(packets.size(), false);
  Rng rng(derive_seed(cfg.seed, kDropStream));

  if (const auto* d = std::get_if<DropCount>(&cfg.loss)) {
    if (static_cast<size_t>(d->n) > droppable.size()) {
      throw ConfigError("drop_count " + std::to_string(d->n) + " exceeds the " +
                        std::to_string(droppable.size()) + " droppable packets");
    }
    // Partial Fisher-Yates: the first n slots are a uniform n-subset.
    for (int i = 0; i < d->n; ++i) {
      const size_t j = i + rng.below(droppable.size() - i);
      std::swap(droppable[i], droppable[j]);
      dropped[droppable[i]] = true;
    }
  } else if (const auto* r = std::get_if<DropRate>(&cfg.loss)) {
    for (size_t i : droppable) dropped[i] = rng.bernoulli(r->r);
  }

  std::vector<Packet> out;
  out.reserve(packets.size());
  for (size_t i = 0; i < packets.size(); ++i) {
    if (!dropped[i]) out.push_back(packets[i]);
  }
  return out;
}

uint64_t inject_bit_errors(std::span<Packet> packets, const ProtectedBitSet& protection,
                           const ChannelConfig& cfg) {
  cfg.validate();
  const double p = cfg.bit_error_prob;
  if (p == 0.0) return 0;
  Rng rng(derive_seed(cfg.seed, kBitErrorStream));
  uint64_t flipped = 0;
  for (Packet& packet : packets) {
    if (packet.seq == 0) continue;
    const uint64_t base = static_cast<uint64_t>(packet.seq) * kPacketPayloadBytes * 8;
    for (size_t byte = 0; byte < kPacketPayloadBytes; ++byte) {
      uint8_t flips = 0;
      for (int bit = 0; bit < 8; ++bit) {
        const uint64_t pos = base + byte * 8 + bit;
        if (protection.contains(pos)) continue;
        if (p >= 1.0 || rng.bernoulli(p)) {
          flips |= static_cast<uint8_t>(0x80u >> bit);
          ++flipped;
        }
      }
      packet.payload[byte] ^= flips;
    }
  }
  return flipped;
}

Transmission transmit(std::span<const Packet> packets, const ProtectedBitSet& protection,
                      const ChannelConfig& cfg) {
  Truncation truncated = truncate_to_budget(packets, protection, cfg);
  Transmission out;
  out.report = truncated.report;
  out.decodable = truncated.decodable;
  if (!out.decodable) return out;

  out.received = drop_packets(truncated.packets, cfg);
  out.report.bits_flipped = inject_bit_errors(out.received, protection, cfg);
  out.report.packets_delivered = out.received.size();

  // Stream bytes (not padding) carried by delivered packets.
  const uint64_t stream_bytes = StreamLayout::from_header(parse_header(packets.front().payload)).total_bytes;
  for (const Packet& p : out.received) {
    const uint64_t begin = static_cast<uint64_t>(p.seq) * kPacketPayloadBytes;
    out.report.effective_payload_bytes +=
        std::min<uint64_t>(kPacketPayloadBytes, stream_bytes > begin ? stream_bytes - begin : 0);
  }
  return out;
}

uint64_t full_stream_cost(size_t packet_count, const ProtectedBitSet& protection) {
  return packet_count * kPacketBytes + protection.overhead_bytes_for_prefix(packet_count);
}

ConventionalOutcome conventional_baseline(const PixelImage& img, ColorMode mode,
                                          const ChannelConfig& cfg) {
  return conventional_baseline(transform_image(img, mode), cfg);
}

ConventionalOutcome conventional_baseline(const TransformedImage& transformed,
                                          const ChannelConfig& cfg, ConventionalCache* cache) {
  cfg.validate();
  const std::optional<uint64_t> budget = cfg.bytes_budget();

  struct Candidate {
    EncodedImage image;
    std::vector<Packet> packets;
    ProtectedBitSet protection;
    uint64_t cost = 0;
  };
  auto build = [&](int q) {
    Candidate c;
    c.image = quantize_image(transformed, QualityFactor(q));
    c.packets = packetize(serialize(c.image));
    c.protection = protected_bit_set(c.image, cfg.protection, cfg.fec_overhead_factor);
    c.cost = full_stream_cost(c.packets.size(), c.protection);
    return c;
  };
  auto cost = [&](int q) -> uint64_t {
    const auto key = std::make_tuple(q, cfg.protection, cfg.fec_overhead_factor);
    if (cache) {
      if (auto it = cache->cost.find(key); it != cache->cost.end()) return it->second;
    }
    const uint64_t c = build(q).cost;
    if (cache) cache->cost.emplace(key, c);
    return c;
  };
  auto fits = [&](int q) { return !budget || cost(q) <= *budget; };

  ConventionalOutcome out;
  int chosen = 0;
  if (fits(100)) {
    chosen = 100;
  } else if (fits(1)) {
    // Invariant: lo fits, hi does not.
    int lo = 1;
    int hi = 100;
    while (hi - lo > 1) {
      const int mid = lo + (hi - lo) / 2;
      (fits(mid) ? lo : hi) = mid;
    }
    chosen = lo;
  } else {
    return out;
  }
  Candidate c = build(chosen);
  out.quality = QualityFactor(chosen);
  out.wire_bytes = c.cost;
  out.image = std::move(c.image);
  out.packets = std::move(c.packets);
  out.protection = std::move(c.protection);
  return out;
}

}  // namespace semcomm
