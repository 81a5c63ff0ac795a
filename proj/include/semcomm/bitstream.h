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

#ifndef SEMCOMM_BITSTREAM_H_
#define SEMCOMM_BITSTREAM_H_

// Plane-ordered serialization of EncodedImage and fixed-size packets.
//
// Stream layout (multi-byte integers little-endian):
//
//   offset  size  field
//   0       4     magic "SEMC"
//   4       1     version (1)
//   5       1     color mode (0 luma, 1 ycbcr444)
//   6       1     channels
//   7       1     quality factor
//   8       2     width
//   10      2     height
//   12      2     plane count P = 64 * channels
//   14      5*P   per plane, transmission order: bit width (u8), value count (u32)
//   ...           payload: planes in transmission order, each starting on a
//                 byte boundary, values MSB-first in two's complement
//
// Packets are 1024 bytes on the wire: seq (u32), total (u32), 1016 payload
// bytes. The last packet is zero-padded.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "semcomm/codec.h"
#include "semcomm/mask.h"

namespace semcomm {

inline constexpr std::array<uint8_t, 4> kStreamMagic = {'S', 'E', 'M', 'C'};
inline constexpr uint8_t kStreamVersion = 1;
inline constexpr size_t kFixedHeaderBytes = 14;
inline constexpr size_t kPlaneEntryBytes = 5;

inline constexpr size_t kPacketBytes = 1024;
inline constexpr size_t kPacketHeaderBytes = 8;
inline constexpr size_t kPacketPayloadBytes = kPacketBytes - kPacketHeaderBytes;

struct PlaneEntry {
  uint8_t bit_width = 0;
  uint32_t value_count = 0;
  friend bool operator==(const PlaneEntry&, const PlaneEntry&) = default;
};

struct StreamHeader {
  uint8_t version = kStreamVersion;
  ColorMode color_mode = ColorMode::kLuma;
  uint8_t channels = 0;
  uint8_t quality = 0;
  uint16_t width = 0;
  uint16_t height = 0;
  std::vector<PlaneEntry> planes;  // transmission order

  size_t encoded_size() const { return kFixedHeaderBytes + kPlaneEntryBytes * planes.size(); }
  friend bool operator==(const StreamHeader&, const StreamHeader&) = default;
};

// Byte and bit positions of every plane inside a serialized stream.
struct StreamLayout {
  size_t header_bytes = 0;
  size_t total_bytes = 0;
  std::vector<size_t> plane_offset;  // first byte of each plane
  std::vector<int> plane_width;
  std::vector<uint32_t> plane_count;

  static StreamLayout from_header(const StreamHeader& header);
  static StreamLayout from_image(const EncodedImage& enc);

  // First bit of value j in plane p, counted from the start of the stream.
  uint64_t value_bit(size_t p, size_t j) const {
    return static_cast<uint64_t>(plane_offset[p]) * 8 +
           static_cast<uint64_t>(j) * plane_width[p];
  }
  size_t packet_count() const {
    return (total_bytes + kPacketPayloadBytes - 1) / kPacketPayloadBytes;
  }
};

StreamHeader make_header(const EncodedImage& enc);

// Throws FormatError on bad magic, version, truncation or inconsistent fields.
StreamHeader parse_header(std::span<const uint8_t> bytes);

// Throws ConfigError if a value does not fit in 16 bits or the header would
// not fit in the first packet.
std::vector<uint8_t> serialize(const EncodedImage& enc);

// Throws FormatError on malformed input.
EncodedImage deserialize(std::span<const uint8_t> bytes);

struct Packet {
  uint32_t seq = 0;
  uint32_t total = 0;
  std::array<uint8_t, kPacketPayloadBytes> payload{};

  friend bool operator==(const Packet&, const Packet&) = default;
};

// Splits a non-empty stream into 1016-byte payload slices.
std::vector<Packet> packetize(std::span<const uint8_t> stream);

std::array<uint8_t, kPacketBytes> to_wire(const Packet& packet);
Packet from_wire(std::span<const uint8_t, kPacketBytes> wire);

struct ReceivedImage {
  EncodedImage image;  // absent coefficients are 0
  ReconstructionMask mask;
};

// Decodes whatever arrived. A coefficient is present iff every byte of its
// bit span was received. Returns nullopt when packet 0 (the header) is
// missing. Throws FormatError on duplicate sequence numbers or packets that
// disagree with each other or with the header.
std::optional<ReceivedImage> depacketize(std::span<const Packet> received);

// .semc files hold exactly the serialize() output.
void write_stream(const std::filesystem::path& path, std::span<const uint8_t> stream);
std::vector<uint8_t> read_stream(const std::filesystem::path& path);

// .pkts files are concatenated 1024-byte wire packets in sequence order.
void write_packets(const std::filesystem::path& path, std::span<const Packet> packets);
std::vector<Packet> read_packets(const std::filesystem::path& path);

}  // namespace semcomm

#endif  // SEMCOMM_BITSTREAM_H_
