#include "probekit/radiotap.hpp"

#include <string>

#include "probekit/bytes.hpp"
#include "probekit/errors.hpp"

namespace probekit {

namespace {

// Size and alignment of the radiotap fields up to Channel, in bit order.
// Everything past Channel is irrelevant here; the walk stops there.
struct FieldLayout {
  std::size_t size;
  std::size_t align;
};

constexpr FieldLayout kFieldLayout[] = {
    {8, 8},  // 0 TSFT
    {1, 1},  // 1 Flags
    {1, 1},  // 2 Rate
    {4, 2},  // 3 Channel: u16 frequency + u16 flags
};

constexpr std::uint32_t kPresentExt = 0x80000000u;
constexpr std::uint8_t kFlagsFcs = 0x10;

std::size_t align_up(std::size_t value, std::size_t alignment) {
  return (value + alignment - 1) / alignment * alignment;
}

}  // namespace

std::pair<std::size_t, RadiotapInfo> strip_radiotap(std::span<const std::uint8_t> payload) {
  if (payload.size() < 8) {
    throw RadiotapTooShort("radiotap payload is " + std::to_string(payload.size()) +
                           " bytes, header needs at least 8");
  }
  RadiotapInfo info;
  info.header_length = load_u16_le(payload.data() + 2);
  if (info.header_length < 8) {
    throw RadiotapTooShort("radiotap declares header length " +
                           std::to_string(info.header_length) + ", minimum is 8");
  }
  if (info.header_length > payload.size()) {
    throw RadiotapLengthOverrun("radiotap declares header length " +
                                std::to_string(info.header_length) + " but only " +
                                std::to_string(payload.size()) + " bytes were captured");
  }

  // Presence words start at offset 4 and chain while bit 31 is set.
  const std::uint32_t present = load_u32_le(payload.data() + 4);
  std::size_t cursor = 8;
  std::uint32_t word = present;
  while (word & kPresentExt) {
    if (cursor + 4 > info.header_length) {
      // Chain claims another word that the declared length cannot hold.
      return {info.header_length, info};
    }
    word = load_u32_le(payload.data() + cursor);
    cursor += 4;
  }

  // Field data follows the last presence word; only the first word's
  // standard fields are interpreted.
  for (std::size_t bit = 0; bit < std::size(kFieldLayout); ++bit) {
    if ((present & (1u << bit)) == 0) continue;
    const FieldLayout layout = kFieldLayout[bit];
    cursor = align_up(cursor, layout.align);
    if (cursor + layout.size > info.header_length) break;
    if (bit == 1) {
      info.has_flags = true;
      info.fcs_present = (payload[cursor] & kFlagsFcs) != 0;
    } else if (bit == 3) {
      info.channel_mhz = load_u16_le(payload.data() + cursor);
    }
    cursor += layout.size;
  }
  return {info.header_length, info};
}

}  // namespace probekit
