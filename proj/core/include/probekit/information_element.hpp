#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace probekit {

namespace ie_tag {
inline constexpr std::uint8_t kSsid = 0;
inline constexpr std::uint8_t kSupportedRates = 1;
inline constexpr std::uint8_t kDsParameter = 3;
inline constexpr std::uint8_t kHtCapabilities = 45;
inline constexpr std::uint8_t kExtendedSupportedRates = 50;
inline constexpr std::uint8_t kInterworking = 107;
inline constexpr std::uint8_t kExtendedCapabilities = 127;
inline constexpr std::uint8_t kVhtCapabilities = 191;
inline constexpr std::uint8_t kVendorSpecific = 221;
inline constexpr std::uint8_t kElementExtension = 255;
}  // namespace ie_tag

// Name for a well-known tag id, or nullptr for ids outside the registry.
const char* tag_name(std::uint8_t tag_id);

// One tag-length-value element from a management frame. Bodies are opaque
// bytes; unknown tags are preserved verbatim.
struct InformationElement {
  std::uint8_t tag_id = 0;
  std::vector<std::uint8_t> body;

  // For tag 255 the first body byte selects the extended element.
  std::optional<std::uint8_t> extension_id() const {
    if (tag_id == ie_tag::kElementExtension && !body.empty()) return body[0];
    return std::nullopt;
  }

  bool operator==(const InformationElement&) const = default;
};

// Rate bytes as carried in Supported Rates / Extended Supported Rates:
// low 7 bits are the rate in 500 kbit/s units, the high bit flags basic rates.
struct SupportedRates {
  std::vector<std::uint8_t> rates;

  static constexpr std::size_t kMaxElementEntries = 8;

  static double rate_mbps(std::uint8_t b) { return static_cast<double>(b & 0x7f) / 2.0; }
  static bool is_basic(std::uint8_t b) { return (b & 0x80) != 0; }

  bool operator==(const SupportedRates&) const = default;
};

// The rate set the bulk of observed devices advertise: 1, 2, 5.5 and 11 Mbit/s.
SupportedRates default_rates();

struct TruncatedElement {
  std::size_t offset = 0;  // byte offset of the element whose length overruns
  std::uint8_t tag_id = 0;
  std::uint8_t declared_length = 0;
};

struct IeDecodeResult {
  std::vector<InformationElement> elements;  // elements before the fault, in order
  std::optional<TruncatedElement> error;

  bool ok() const { return !error.has_value(); }
};

// Greedy TLV walk over a management-frame tail. Preserves order and
// duplicates; never reads past the buffer. On a length overrun the elements
// decoded so far are returned together with the fault offset.
IeDecodeResult decode_ies(std::span<const std::uint8_t> body);

// Appends tag/length/body for each element. Throws OversizedElement when a
// body exceeds the one-byte length field.
void encode_ies(std::span<const InformationElement> ies, std::vector<std::uint8_t>& out);
std::vector<std::uint8_t> encode_ies(std::span<const InformationElement> ies);

// First element with the given tag, or nullptr.
const InformationElement* find_first(std::span<const InformationElement> ies, std::uint8_t tag_id);

}  // namespace probekit
