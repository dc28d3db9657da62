#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace probekit {

inline constexpr std::uint32_t kLinkTypeIeee80211 = 105;  // raw 802.11 frames
inline constexpr std::uint32_t kLinkTypeRadiotap = 127;   // radiotap pseudo-header first

// One captured record. Capture hardware may reorder frames, so timestamps are
// not assumed monotonic; analyses sort explicitly.
struct CaptureRecord {
  std::int64_t timestamp_ns = 0;
  std::uint32_t link_type = kLinkTypeIeee80211;
  std::vector<std::uint8_t> payload;

  bool operator==(const CaptureRecord&) const = default;
};

// Streaming reader for classic pcap. Accepts the microsecond magics
// 0xa1b2c3d4 / 0xd4c3b2a1 and the nanosecond magics 0xa1b23c4d / 0x4d3cb2a1
// in either byte order. Throws BadMagic or UnsupportedLinkType up front,
// TruncatedRecord when the stream ends mid-record (records before the
// truncation have already been yielded).
class PcapReader {
 public:
  explicit PcapReader(std::istream& in);

  std::optional<CaptureRecord> next();

  std::uint32_t link_type() const { return link_type_; }
  bool nanosecond_timestamps() const { return nanos_; }

 private:
  std::istream& in_;
  bool swapped_ = false;
  bool nanos_ = false;
  std::uint32_t link_type_ = 0;
};

// Reads every record. Same error behavior as PcapReader.
std::vector<CaptureRecord> read_capture(std::istream& in, std::uint32_t* link_type = nullptr);

// Writes microsecond little-endian classic pcap. Read-after-write reproduces
// payloads bit-exactly and timestamps to microsecond precision. Throws
// IoFailure when the sink fails.
void write_capture(std::span<const CaptureRecord> records, std::uint32_t link_type,
                   std::ostream& out);

}  // namespace probekit
