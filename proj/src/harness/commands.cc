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

#include "semcomm/harness/commands.h"

#include <fstream>

#include "semcomm/bitstream.h"
#include "semcomm/error.h"
#include "semcomm/harness/manifest.h"
#include "semcomm/image_io.h"
#include "semcomm/mask.h"

namespace semcomm::harness {
namespace {

bool has_extension(const std::filesystem::path& p, const char* ext) {
  return p.extension() == ext;
}

void append_report(const std::filesystem::path& path, const std::string& source,
                   const CorruptSummary& s, const std::string& output) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw FormatError("cannot open " + path.string());
  if (fresh) {
    const auto& cols = report_columns();
    for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
  }
  const TransmissionReport& r = s.report;
  const std::vector<std::string> fields = {
      source,
      s.decodable ? "ok" : "failed:undecodable",
      std::to_string(r.packets_total),
      std::to_string(r.packets_sent),
      std::to_string(r.packets_delivered),
      std::to_string(r.bits_flipped),
      r.bytes_budget ? std::to_string(*r.bytes_budget) : "",
      std::to_string(r.protected_bytes),
      std::to_string(r.effective_payload_bytes),
      s.decodable ? std::to_string(s.mask_cardinality) : "",
      s.decodable ? std::to_string(s.mask_total) : "",
      s.psnr_vs_full ? format_real(*s.psnr_vs_full) : "",
      output,
  };
  for (size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_escape(fields[i]);
  out << '\n';
}

}  // namespace

EncodeSummary cmd_encode(const EncodeOptions& opts, std::ostream& log) {
  const PixelImage img = read_image(opts.input);
  const EncodedImage enc = encode_image(img, QualityFactor(opts.quality), opts.color_mode);
  const std::vector<uint8_t> stream = serialize(enc);
  write_stream(opts.output, stream);

  const StreamLayout layout = StreamLayout::from_image(enc);
  EncodeSummary s;
  s.stream_bytes = stream.size();
  s.header_bytes = layout.header_bytes;
  s.plane0_bytes = layout.plane_offset[static_cast<size_t>(enc.channels)] - layout.header_bytes;
  s.packets = layout.packet_count();
  log << "encoded " << opts.input.string() << " (" << img.width << "x" << img.height << ", "
      << to_string(enc.color_mode) << ", Q=" << enc.quality << ")\n"
      << "stream bytes: " << s.stream_bytes << " (header " << s.header_bytes << ", plane 0 "
      << s.plane0_bytes << ")\n"
      << "packets: " << s.packets << '\n';
  return s;
}

DecodeSummary cmd_decode(const DecodeOptions& opts, std::ostream& log) {
  if (opts.keep_top_n && opts.remove_k) throw ConfigError("choose --keep-top or --remove-k, not both");
  ReceivedImage received;
  if (has_extension(opts.input, ".pkts")) {
    std::optional<ReceivedImage> r = depacketize(read_packets(opts.input));
    if (!r) {
      log << "undecodable: packet 0 missing\n";
      return {};
    }
    received = std::move(*r);
  } else {
    received.image = deserialize(read_stream(opts.input));
    received.mask = ReconstructionMask::full(received.image);
  }

  ReconstructionMask mask = received.mask;
  if (opts.keep_top_n || opts.remove_k) {
    const ReconstructionMask extra =
        opts.keep_top_n ? make_mask(received.image, KeepTopN{*opts.keep_top_n})
                        : make_mask(received.image, RemovePlane{*opts.remove_k});
    for (int k = 0; k < 64; ++k) {
      for (int ch = 0; ch < mask.channels(); ++ch) {
        for (int b = 0; b < mask.blocks(); ++b) {
          if (!extra.present(ch, k, b)) mask.set(ch, k, b, false);
        }
      }
    }
  }

  const PixelImage img = reconstruct(received.image, mask);
  write_png(opts.output, img);
  DecodeSummary s;
  s.decodable = true;
  s.mask_cardinality = mask.cardinality();
  s.mask_total = mask.size();
  if (opts.reference) {
    const PixelImage ref = reference_image(read_image(*opts.reference), received.image.color_mode);
    s.psnr = psnr(ref, img);
  }
  log << "decoded " << img.width << "x" << img.height << " with " << s.mask_cardinality << "/"
      << s.mask_total << " coefficients";
  if (s.psnr) log << ", PSNR " << format_real(*s.psnr) << " dB";
  log << '\n';
  return s;
}

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = {
      "source", "status", "packets_total", "packets_sent", "packets_delivered", "bits_flipped",
      "bytes_budget", "protected_bytes", "effective_payload_bytes", "mask_cardinality",
      "mask_total", "psnr_vs_full", "output",
  };
  return cols;
}

CorruptSummary cmd_corrupt(const CorruptOptions& opts, std::ostream& log) {
  opts.channel.validate();
  const std::vector<uint8_t> stream = read_stream(opts.input);
  const EncodedImage enc = deserialize(stream);
  const std::vector<Packet> packets = packetize(stream);
  const ProtectedBitSet prot =
      protected_bit_set(enc, opts.channel.protection, opts.channel.fec_overhead_factor);

  const Transmission tx = transmit(packets, prot, opts.channel);
  CorruptSummary s;
  s.report = tx.report;
  s.decodable = tx.decodable;
  if (opts.packets_out) write_packets(*opts.packets_out, tx.received);

  std::string output;
  if (tx.decodable) {
    const std::optional<ReceivedImage> r = depacketize(tx.received);
    s.decodable = r.has_value();
    if (r) {
      const PixelImage img = reconstruct(r->image, r->mask);
      s.mask_cardinality = r->mask.cardinality();
      s.mask_total = r->mask.size();
      s.psnr_vs_full = psnr(reconstruct(enc), img);
      if (opts.image_out) {
        write_png(*opts.image_out, img);
        output = opts.image_out->string();
      }
    }
  }
  if (opts.report_csv) append_report(*opts.report_csv, opts.input.string(), s, output);

  log << "packets: " << s.report.packets_total << " total, " << s.report.packets_sent << " sent, "
      << s.report.packets_delivered << " delivered; bits flipped: " << s.report.bits_flipped;
  if (s.report.bytes_budget) log << "; budget " << *s.report.bytes_budget << " bytes";
  log << '\n';
  if (!s.decodable) {
    log << "undecodable: the budget cannot carry packet 0\n";
  } else {
    log << "coefficients: " << s.mask_cardinality << "/" << s.mask_total << ", PSNR vs full "
        << format_real(*s.psnr_vs_full) << " dB\n";
  }
  return s;
}

}  // namespace semcomm::harness
