#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

namespace probekit {

struct RadiotapInfo {
  std::uint16_t header_length = 0;
  bool has_flags = false;    // Flags field present in the header
  bool fcs_present = false;  // Flags bit 0x10: frame ends with an FCS
  std::optional<int> channel_mhz;
};

// Parses the leading radiotap header of a link-type-127 payload: walks the
// presence-word chain (bit 31 = another word follows), then the per-field
// data far enough to pick up Flags and Channel, honoring each field's natural
// alignment. Never reads beyond the declared header length. Returns the
// offset of the 802.11 frame (= header length) and the parsed info.
// Throws RadiotapTooShort / RadiotapLengthOverrun.
std::pair<std::size_t, RadiotapInfo> strip_radiotap(std::span<const std::uint8_t> payload);

// The 8-byte header crafted output uses: version 0, length 8, no fields.
inline constexpr std::uint8_t kMinimalRadiotapHeader[8] = {0, 0, 8, 0, 0, 0, 0, 0};

}  // namespace probekit
