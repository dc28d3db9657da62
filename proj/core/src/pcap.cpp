#include "probekit/pcap.hpp"

#include <istream>
#include <ostream>

#include "probekit/bytes.hpp"
#include "probekit/errors.hpp"

namespace probekit {

namespace {

constexpr std::uint32_t kMagicMicros = 0xa1b2c3d4;
constexpr std::uint32_t kMagicMicrosSwapped = 0xd4c3b2a1;
constexpr std::uint32_t kMagicNanos = 0xa1b23c4d;
constexpr std::uint32_t kMagicNanosSwapped = 0x4d3cb2a1;

constexpr std::size_t kGlobalHeaderSize = 24;
constexpr std::size_t kRecordHeaderSize = 16;

bool read_exact(std::istream& in, std::uint8_t* buf, std::size_t n) {
  in.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(n));
  return static_cast<std::size_t>(in.gcount()) == n;
}

}  // namespace

PcapReader::PcapReader(std::istream& in) : in_(in) {
  std::uint8_t header[kGlobalHeaderSize];
  if (!read_exact(in_, header, sizeof(header))) {
    throw BadMagic("capture shorter than the 24-byte pcap global header");
  }
  const std::uint32_t magic = load_u32_le(header);
  switch (magic) {
    case kMagicMicros: break;
    case kMagicNanos: nanos_ = true; break;
    case kMagicMicrosSwapped: swapped_ = true; break;
    case kMagicNanosSwapped: swapped_ = true; nanos_ = true; break;
    default:
      throw BadMagic("not a classic pcap file (magic " + to_hex({header, 4}) + ")");
  }
  std::uint32_t network = load_u32_le(header + 20);
  if (swapped_) network = swap_u32(network);
  link_type_ = network;
  if (link_type_ != kLinkTypeIeee80211 && link_type_ != kLinkTypeRadiotap) {
    throw UnsupportedLinkType("link type " + std::to_string(link_type_) +
                              " (expected 105 raw 802.11 or 127 radiotap)");
  }
}

std::optional<CaptureRecord> PcapReader::next() {
  std::uint8_t header[kRecordHeaderSize];
  in_.read(reinterpret_cast<char*>(header), sizeof(header));
  const auto got = static_cast<std::size_t>(in_.gcount());
  if (got == 0) return std::nullopt;  // clean end of stream
  if (got < sizeof(header)) {
    throw TruncatedRecord("capture ends inside a record header");
  }
  std::uint32_t ts_sec = load_u32_le(header);
  std::uint32_t ts_frac = load_u32_le(header + 4);
  std::uint32_t incl_len = load_u32_le(header + 8);
  if (swapped_) {
    ts_sec = swap_u32(ts_sec);
    ts_frac = swap_u32(ts_frac);
    incl_len = swap_u32(incl_len);
  }
  // No 802.11 capture carries megabyte frames; a length like this means the
  // stream is corrupt, and resizing to it first would ask for gigabytes.
  constexpr std::uint32_t kMaxCapturedLength = 1u << 24;
  if (incl_len > kMaxCapturedLength) {
    throw TruncatedRecord("record declares an implausible captured length " +
                          std::to_string(incl_len));
  }

  CaptureRecord record;
  record.link_type = link_type_;
  const std::int64_t frac_ns =
      nanos_ ? static_cast<std::int64_t>(ts_frac) : static_cast<std::int64_t>(ts_frac) * 1000;
  record.timestamp_ns = static_cast<std::int64_t>(ts_sec) * 1'000'000'000 + frac_ns;
  record.payload.resize(incl_len);
  if (incl_len > 0 && !read_exact(in_, record.payload.data(), incl_len)) {
    throw TruncatedRecord("capture ends inside a record body (captured length " +
                          std::to_string(incl_len) + ")");
  }
  return record;
}

std::vector<CaptureRecord> read_capture(std::istream& in, std::uint32_t* link_type) {
  PcapReader reader(in);
  if (link_type != nullptr) *link_type = reader.link_type();
  std::vector<CaptureRecord> records;
  while (auto record = reader.next()) {
    records.push_back(std::move(*record));
  }
  return records;
}

void write_capture(std::span<const CaptureRecord> records, std::uint32_t link_type,
                   std::ostream& out) {
  std::uint8_t header[kGlobalHeaderSize] = {};
  store_u32_le(header, kMagicMicros);
  store_u16_le(header + 4, 2);  // version 2.4
  store_u16_le(header + 6, 4);
  store_u32_le(header + 16, 65535);  // snaplen
  store_u32_le(header + 20, link_type);
  out.write(reinterpret_cast<const char*>(header), sizeof(header));

  for (const auto& record : records) {
    std::uint8_t rec_header[kRecordHeaderSize];
    const auto sec = static_cast<std::uint32_t>(record.timestamp_ns / 1'000'000'000);
    const auto usec = static_cast<std::uint32_t>((record.timestamp_ns % 1'000'000'000) / 1000);
    store_u32_le(rec_header, sec);
    store_u32_le(rec_header + 4, usec);
    store_u32_le(rec_header + 8, static_cast<std::uint32_t>(record.payload.size()));
    store_u32_le(rec_header + 12, static_cast<std::uint32_t>(record.payload.size()));
    out.write(reinterpret_cast<const char*>(rec_header), sizeof(rec_header));
    out.write(reinterpret_cast<const char*>(record.payload.data()),
              static_cast<std::streamsize>(record.payload.size()));
  }
  out.flush();
  if (!out) {
    throw IoFailure("writing pcap output failed");
  }
}

}  // namespace probekit
