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

#include "semcomm/bitstream.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "semcomm/error.h"

namespace semcomm {
namespace {

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

uint16_t get_u16(const uint8_t* p) { return static_cast<uint16_t>(p[0] | (p[1] << 8)); }

uint32_t get_u32(const uint8_t* p) {
  return p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

class BitWriter {
 public:
  explicit BitWriter(std::vector<uint8_t>& out) : out_(out) {}

  // Low `width` bits of value, MSB first.
  void write(uint32_t value, int width) {
    for (int i = width - 1; i >= 0; --i) {
      if (fill_ == 0) out_.push_back(0);
      if ((value >> i) & 1u) out_.back() |= static_cast<uint8_t>(0x80u >> fill_);
      fill_ = (fill_ + 1) & 7;
    }
  }

  void align() { fill_ = 0; }

 private:
  std::vector<uint8_t>& out_;
  int fill_ = 0;
};

// Reads `width` bits MSB-first starting at absolute bit `pos`.
int32_t read_signed(std::span<const uint8_t> bytes, uint64_t pos, int width) {
  uint32_t raw = 0;
  for (int i = 0; i < width; ++i, ++pos) {
    raw = (raw << 1) | ((bytes[pos >> 3] >> (7 - (pos & 7))) & 1u);
  }
  if (width > 0 && (raw & (1u << (width - 1)))) {
    return static_cast<int32_t>(raw) - static_cast<int32_t>(1u << width);
  }
  return static_cast<int32_t>(raw);
}

EncodedImage empty_image(const StreamHeader& header) {
  EncodedImage enc;
  enc.width = header.width;
  enc.height = header.height;
  enc.channels = header.channels;
  enc.quality = header.quality;
  enc.color_mode = header.color_mode;
  enc.planes.resize(header.planes.size());
  for (int k = 0; k < kCoefficientsPerBlock; ++k) {
    for (int ch = 0; ch < enc.channels; ++ch) {
      CoefficientPlane& plane = enc.plane(k, ch);
      plane.zigzag_index = k;
      plane.channel = ch;
      plane.values.assign(enc.block_count(), 0);
    }
  }
  return enc;
}

}  // namespace

StreamLayout StreamLayout::from_header(const StreamHeader& header) {
  StreamLayout layout;
  layout.header_bytes = header.encoded_size();
  size_t offset = layout.header_bytes;
  for (const PlaneEntry& e : header.planes) {
    layout.plane_offset.push_back(offset);
    layout.plane_width.push_back(e.bit_width);
    layout.plane_count.push_back(e.value_count);
    offset += (static_cast<size_t>(e.bit_width) * e.value_count + 7) / 8;
  }
  layout.total_bytes = offset;
  return layout;
}

StreamLayout StreamLayout::from_image(const EncodedImage& enc) {
  return from_header(make_header(enc));
}

StreamHeader make_header(const EncodedImage& enc) {
  if (enc.width < 1 || enc.height < 1 || enc.width > 65535 || enc.height > 65535) {
    throw ConfigError("image dimensions do not fit the stream header");
  }
  if (enc.channels != 1 && enc.channels != 3) throw ConfigError("unsupported channel count");
  if (static_cast<int>(enc.planes.size()) != enc.plane_count()) {
    throw ConfigError("encoded image has wrong plane count");
  }
  StreamHeader h;
  h.color_mode = enc.color_mode;
  h.channels = static_cast<uint8_t>(enc.channels);
  h.quality = static_cast<uint8_t>(enc.quality);
  h.width = static_cast<uint16_t>(enc.width);
  h.height = static_cast<uint16_t>(enc.height);
  for (const CoefficientPlane& plane : enc.planes) {
    if (static_cast<int>(plane.values.size()) != enc.block_count()) {
      throw ConfigError("plane value count does not match block count");
    }
    const int width = bit_width(plane);
    if (width > 16) throw ConfigError("coefficient exceeds 16-bit width");
    h.planes.push_back({static_cast<uint8_t>(width), static_cast<uint32_t>(plane.values.size())});
  }
  if (h.encoded_size() > kPacketPayloadBytes) {
    throw ConfigError("stream header does not fit in the first packet");
  }
  return h;
}

StreamHeader parse_header(std::span<const uint8_t> bytes) {
  if (bytes.size() < kFixedHeaderBytes) throw FormatError("stream header truncated");
  if (!std::equal(kStreamMagic.begin(), kStreamMagic.end(), bytes.begin())) {
    throw FormatError("bad stream magic");
  }
  StreamHeader h;
  h.version = bytes[4];
  if (h.version != kStreamVersion) {
    throw FormatError("unsupported stream version " + std::to_string(h.version));
  }
  if (bytes[5] > 1) throw FormatError("bad color mode");
  h.color_mode = static_cast<ColorMode>(bytes[5]);
  h.channels = bytes[6];
  h.quality = bytes[7];
  h.width = get_u16(&bytes[8]);
  h.height = get_u16(&bytes[10]);
  const uint16_t plane_count = get_u16(&bytes[12]);

  const bool channels_ok = (h.color_mode == ColorMode::kLuma && h.channels == 1) ||
                           (h.color_mode == ColorMode::kYCbCr444 && h.channels == 3);
  if (!channels_ok) throw FormatError("channel count does not match color mode");
  if (h.quality < 1 || h.quality > 100) throw FormatError("bad quality factor");
  if (h.width == 0 || h.height == 0) throw FormatError("bad dimensions");
  if (plane_count != kCoefficientsPerBlock * h.channels) throw FormatError("bad plane count");
  if (bytes.size() < kFixedHeaderBytes + kPlaneEntryBytes * plane_count) {
    throw FormatError("plane table truncated");
  }
  const uint32_t blocks = static_cast<uint32_t>((h.width + 7) / 8) * ((h.height + 7) / 8);
  for (size_t p = 0; p < plane_count; ++p) {
    const uint8_t* e = &bytes[kFixedHeaderBytes + kPlaneEntryBytes * p];
    PlaneEntry entry{e[0], get_u32(e + 1)};
    if (entry.bit_width > 16) throw FormatError("plane bit width exceeds 16");
    if (entry.value_count != blocks) throw FormatError("plane value count mismatch");
    h.planes.push_back(entry);
  }
  return h;
}

std::vector<uint8_t> serialize(const EncodedImage& enc) {
  const StreamHeader h = make_header(enc);
  std::vector<uint8_t> out(kStreamMagic.begin(), kStreamMagic.end());
  out.push_back(h.version);
  out.push_back(static_cast<uint8_t>(h.color_mode));
  out.push_back(h.channels);
  out.push_back(h.quality);
  put_u16(out, h.width);
  put_u16(out, h.height);
  put_u16(out, static_cast<uint16_t>(h.planes.size()));
  for (const PlaneEntry& e : h.planes) {
    out.push_back(e.bit_width);
    put_u32(out, e.value_count);
  }
  BitWriter writer(out);
  for (size_t p = 0; p < enc.planes.size(); ++p) {
    const int width = h.planes[p].bit_width;
    const uint32_t mask = width == 0 ? 0u : (width == 32 ? ~0u : (1u << width) - 1u);
    for (int32_t v : enc.planes[p].values) writer.write(static_cast<uint32_t>(v) & mask, width);
    writer.align();
  }
  return out;
}

EncodedImage deserialize(std::span<const uint8_t> bytes) {
  const StreamHeader h = parse_header(bytes);
  const StreamLayout layout = StreamLayout::from_header(h);
  if (bytes.size() < layout.total_bytes) throw FormatError("stream payload truncated");
  EncodedImage enc = empty_image(h);
  for (size_t p = 0; p < enc.planes.size(); ++p) {
    for (size_t j = 0; j < layout.plane_count[p]; ++j) {
      enc.planes[p].values[j] = read_signed(bytes, layout.value_bit(p, j), layout.plane_width[p]);
    }
  }
  return enc;
}

std::vector<Packet> packetize(std::span<const uint8_t> stream) {
  if (stream.empty()) throw ConfigError("cannot packetize an empty stream");
  const size_t total = (stream.size() + kPacketPayloadBytes - 1) / kPacketPayloadBytes;
  std::vector<Packet> packets(total);
  for (size_t i = 0; i < total; ++i) {
    packets[i].seq = static_cast<uint32_t>(i);
    packets[i].total = static_cast<uint32_t>(total);
    const size_t begin = i * kPacketPayloadBytes;
    const size_t n = std::min(kPacketPayloadBytes, stream.size() - begin);
    std::copy_n(stream.begin() + begin, n, packets[i].payload.begin());
  }
  return packets;
}

std::array<uint8_t, kPacketBytes> to_wire(const Packet& packet) {
  std::array<uint8_t, kPacketBytes> wire{};
  for (int i = 0; i < 4; ++i) {
    wire[i] = static_cast<uint8_t>(packet.seq >> (8 * i));
    wire[4 + i] = static_cast<uint8_t>(packet.total >> (8 * i));
  }
  std::copy(packet.payload.begin(), packet.payload.end(), wire.begin() + kPacketHeaderBytes);
  return wire;
}

Packet from_wire(std::span<const uint8_t, kPacketBytes> wire) {
  Packet packet;
  packet.seq = get_u32(wire.data());
  packet.total = get_u32(wire.data() + 4);
  std::copy(wire.begin() + kPacketHeaderBytes, wire.end(), packet.payload.begin());
  return packet;
}

std::optional<ReceivedImage> depacketize(std::span<const Packet> received) {
  if (received.empty()) return std::nullopt;
  const uint32_t total = received.front().total;
  std::vector<const Packet*> by_seq(total, nullptr);
  for (const Packet& p : received) {
    if (p.total != total) throw FormatError("packets disagree on total count");
    if (p.seq >= total) throw FormatError("packet sequence number out of range");
    if (by_seq[p.seq]) throw FormatError("duplicate packet " + std::to_string(p.seq));
    by_seq[p.seq] = &p;
  }
  if (!by_seq[0]) return std::nullopt;

  const StreamHeader h = parse_header(by_seq[0]->payload);
  const StreamLayout layout = StreamLayout::from_header(h);
  if (layout.packet_count() != total) {
    throw FormatError("packet count does not match stream header");
  }

  std::vector<uint8_t> stream(static_cast<size_t>(total) * kPacketPayloadBytes, 0);
  for (uint32_t s = 0; s < total; ++s) {
    if (by_seq[s]) {
      std::copy(by_seq[s]->payload.begin(), by_seq[s]->payload.end(),
                stream.begin() + static_cast<size_t>(s) * kPacketPayloadBytes);
    }
  }

  ReceivedImage out{empty_image(h), ReconstructionMask()};
  out.mask = ReconstructionMask::none(out.image);
  for (size_t p = 0; p < h.planes.size(); ++p) {
    const int width = layout.plane_width[p];
    const int k = static_cast<int>(p) / h.channels;
    const int ch = static_cast<int>(p) % h.channels;
    if (width == 0) {
      out.mask.set_plane(ch, k, true);
      continue;
    }
    for (size_t j = 0; j < layout.plane_count[p]; ++j) {
      const uint64_t first = layout.value_bit(p, j);
      const uint64_t last = first + width - 1;
      const size_t first_packet = (first / 8) / kPacketPayloadBytes;
      const size_t last_packet = (last / 8) / kPacketPayloadBytes;
      bool whole = true;
      for (size_t s = first_packet; s <= last_packet; ++s) whole &= by_seq[s] != nullptr;
      if (!whole) continue;
      out.image.planes[p].values[j] = read_signed(stream, first, width);
      out.mask.set(ch, k, static_cast<int>(j), true);
    }
  }
  return out;
}

void write_stream(const std::filesystem::path& path, std::span<const uint8_t> stream) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open " + path.string());
  f.write(reinterpret_cast<const char*>(stream.data()), static_cast<std::streamsize>(stream.size()));
  if (!f) throw FormatError("write failed: " + path.string());
}

std::vector<uint8_t> read_stream(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write_packets(const std::filesystem::path& path, std::span<const Packet> packets) {
  std::vector<const Packet*> ordered;
  for (const Packet& p : packets) ordered.push_back(&p);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Packet* a, const Packet* b) { return a->seq < b->seq; });
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open " + path.string());
  for (const Packet* p : ordered) {
    const auto wire = to_wire(*p);
    f.write(reinterpret_cast<const char*>(wire.data()), wire.size());
  }
  if (!f) throw FormatError("write failed: " + path.string());
}

std::vector<Packet> read_packets(const std::filesystem::path& path) {
  const std::vector<uint8_t> bytes = read_stream(path);
  if (bytes.size() % kPacketBytes != 0) throw FormatError("packet file size is not a multiple of 1024");
  std::vector<Packet> packets;
  for (size_t off = 0; off < bytes.size(); off += kPacketBytes) {
    packets.push_back(from_wire(std::span<const uint8_t, kPacketBytes>(&bytes[off], kPacketBytes)));
  }
  return packets;
}

}  // namespace semcomm
