#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "probekit/information_element.hpp"
#include "probekit/mac_address.hpp"

namespace probekit {

// Frame kinds this toolkit distinguishes. Derived from frame-control byte 0
// only: type bits (fc0 >> 2) & 3, subtype bits fc0 >> 4.
enum class FrameKind : std::uint8_t {
  ProbeReq,
  ProbeResp,
  Beacon,
  Auth,
  AssocReq,
  AssocResp,
  Data,
  Other,
};

FrameKind classify_frame_control(std::uint8_t fc0);

// Data subtypes with bit 0x04 set carry no payload (null function and the
// CF-only variants).
bool is_null_data(std::uint8_t fc0);

const char* frame_kind_name(FrameKind kind);

// Fixed 24-byte 802.11 management header. addr1/2/3 are DA, SA, BSSID for
// every management subtype.
struct ManagementHeader {
  static constexpr std::size_t kSize = 24;

  std::uint8_t fc0 = 0;  // protocol version, type, subtype
  std::uint8_t fc1 = 0;  // flags (ToDS/FromDS, retry, ...)
  std::uint16_t duration = 0;
  MacAddress da;
  MacAddress sa;
  MacAddress bssid;
  std::uint16_t sequence_control = 0;  // raw 16-bit field

  std::uint16_t sequence_number() const { return static_cast<std::uint16_t>(sequence_control >> 4); }
  std::uint8_t fragment_number() const { return static_cast<std::uint8_t>(sequence_control & 0x0f); }
  FrameKind kind() const { return classify_frame_control(fc0); }

  bool operator==(const ManagementHeader&) const = default;
};

// One parsed probe request. frame_length counts 802.11 frame bytes only,
// excluding radiotap and any stripped FCS. Timestamps are nanoseconds since
// the epoch throughout the toolkit.
struct ProbeRequestRecord {
  std::int64_t timestamp_ns = 0;
  ManagementHeader header;
  std::vector<InformationElement> ies;
  std::uint32_t frame_length = 0;
  bool fcs_present = false;
  std::optional<int> channel_hint;  // from the DS Parameter element

  // Body of the first SSID element; empty body means an undirected probe.
  std::optional<std::span<const std::uint8_t>> ssid() const;
  bool undirected() const;

  bool operator==(const ProbeRequestRecord&) const = default;
};

// Builds a record with frame_length and channel_hint derived from the parts.
ProbeRequestRecord make_probe_request(std::int64_t timestamp_ns, const ManagementHeader& header,
                                      std::vector<InformationElement> ies, bool fcs_present = false);

// Header followed by TLV-encoded elements, plus a trailing little-endian
// CRC-32 when the record says an FCS belongs on the frame. Throws
// OversizedElement for bodies over 255 bytes.
std::vector<std::uint8_t> encode_probe_request(const ProbeRequestRecord& record);

// Inverse of encode_probe_request for frames whose FCS is already stripped.
// Returns nullopt (with a reason when asked) for frames that are not
// well-formed probe requests; such frames count as unparseable upstream.
std::optional<ProbeRequestRecord> decode_probe_request(std::span<const std::uint8_t> frame,
                                                       std::int64_t timestamp_ns,
                                                       std::string* error = nullptr);

// 24-byte header codec shared by the probe codec and the event classifier.
std::optional<ManagementHeader> decode_management_header(std::span<const std::uint8_t> frame);
void encode_management_header(const ManagementHeader& header, std::vector<std::uint8_t>& out);

}  // namespace probekit
