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

#ifndef SEMCOMM_CHANNEL_H_
#define SEMCOMM_CHANNEL_H_

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "semcomm/bitstream.h"
#include "semcomm/codec.h"
#include "semcomm/image.h"

namespace semcomm {

using Duration = std::chrono::nanoseconds;

struct NoLoss {
  friend bool operator==(const NoLoss&, const NoLoss&) = default;
};
struct DropCount {
  int n = 0;
  friend bool operator==(const DropCount&, const DropCount&) = default;
};
struct DropRate {
  double r = 0.0;
  friend bool operator==(const DropRate&, const DropRate&) = default;
};
using LossSpec = std::variant<NoLoss, DropCount, DropRate>;

enum class Protection : uint8_t { kNone, kDcSign, kDcFull };

std::string_view to_string(Protection p);
// "none", "dc_sign", "dc_full". Throws ConfigError.
Protection parse_protection(std::string_view text);

struct ChannelConfig {
  double bit_error_prob = 0.0;
  LossSpec loss = NoLoss{};
  // Both unset means an unlimited budget.
  std::optional<uint64_t> rate_bps;
  std::optional<Duration> deadline;
  Duration compute_time{0};
  Protection protection = Protection::kNone;
  double fec_overhead_factor = 1.0;
  uint64_t seed = 0;

  // Throws ConfigError when a field is out of its domain.
  void validate() const;

  // floor(rate * (deadline - compute_time) / 8); nullopt when unlimited.
  std::optional<uint64_t> bytes_budget() const;
};

struct TransmissionReport {
  uint64_t packets_total = 0;      // packets in the full stream
  uint64_t packets_sent = 0;       // packets transmitted within the budget
  uint64_t packets_delivered = 0;  // after losses
  uint64_t bits_flipped = 0;
  std::optional<uint64_t> bytes_budget;
  uint64_t protected_bytes = 0;          // FEC overhead charged
  uint64_t effective_payload_bytes = 0;  // stream bytes in delivered packets
};

// Stream bit positions exempt from bit errors, plus their FEC cost.
class ProtectedBitSet {
 public:
  ProtectedBitSet() = default;
  ProtectedBitSet(size_t stream_bytes, double fec_overhead_factor);

  void add(uint64_t stream_bit);
  bool contains(uint64_t stream_bit) const {
    return stream_bit < bits_.size() && bits_[stream_bit];
  }
  uint64_t size() const { return count_; }
  double fec_overhead_factor() const { return factor_; }

  // ceil(factor * protected_bits / 8) over the whole stream.
  uint64_t overhead_bytes() const;

  // Overhead charged when the first `packet_count` packets are sent. Packet 0
  // is treated as reliable and carries no FEC charge.
  uint64_t overhead_bytes_for_prefix(size_t packet_count) const;

 private:
  std::vector<bool> bits_;
  std::vector<uint64_t> per_packet_;
  uint64_t count_ = 0;
  double factor_ = 1.0;
};

// kDcSign: the sign (most significant) bit of every plane-0 value.
// kDcFull: every bit of every plane-0 value.
ProtectedBitSet protected_bit_set(const EncodedImage& enc, Protection mode,
                                  double fec_overhead_factor = 1.0);

struct Truncation {
  std::vector<Packet> packets;
  TransmissionReport report;
  bool decodable = false;  // false iff the budget cannot carry packet 0
};

// Longest packet prefix whose wire bytes plus FEC overhead fit the budget.
Truncation truncate_to_budget(std::span<const Packet> packets,
                              const ProtectedBitSet& protection,
                              const ChannelConfig& cfg);

// Removes packets according to cfg.loss; packet 0 is never dropped.
// Throws ConfigError if DropCount exceeds the number of droppable packets.
std::vector<Packet> drop_packets(std::span<const Packet> packets, const ChannelConfig& cfg);

// Flips each unprotected payload bit of every packet except packet 0 with
// probability cfg.bit_error_prob. Returns the number of flipped bits.
uint64_t inject_bit_errors(std::span<Packet> packets, const ProtectedBitSet& protection,
                           const ChannelConfig& cfg);

struct Transmission {
  std::vector<Packet> received;
  TransmissionReport report;
  bool decodable = false;
};

// truncate -> drop -> bit errors.
Transmission transmit(std::span<const Packet> packets, const ProtectedBitSet& protection,
                      const ChannelConfig& cfg);

// Wire bytes needed to send a whole stream of `packet_count` packets,
// including FEC overhead.
uint64_t full_stream_cost(size_t packet_count, const ProtectedBitSet& protection);

struct ConventionalOutcome {
  std::optional<QualityFactor> quality;  // nullopt: nothing fits, no inference
  EncodedImage image;
  std::vector<Packet> packets;
  ProtectedBitSet protection;
  uint64_t wire_bytes = 0;

  bool failed() const { return !quality.has_value(); }
};

// Memoized full-stream costs per (Q, protection, FEC factor) for one
// transformed image; lets a sweep share work across budgets.
struct ConventionalCache {
  std::map<std::tuple<int, Protection, double>, uint64_t> cost;
};

// Largest Q whose complete stream fits the budget (binary search; stream
// size is monotone in Q).
ConventionalOutcome conventional_baseline(const PixelImage& img, ColorMode mode,
                                          const ChannelConfig& cfg);
ConventionalOutcome conventional_baseline(const TransformedImage& transformed,
                                          const ChannelConfig& cfg,
                                          ConventionalCache* cache = nullptr);

}  // namespace semcomm

#endif  // SEMCOMM_CHANNEL_H_
