#include "probekit/crc32.hpp"

#include <array>

#include "probekit/bytes.hpp"
#include "probekit/errors.hpp"

namespace probekit {

namespace {

std::array<std::uint32_t, 256> build_table() {
  std::array<std::uint32_t, 256> table{};
  for (std::uint32_t i = 0; i < 256; ++i) {
    std::uint32_t c = i;
    for (int bit = 0; bit < 8; ++bit) {
      c = (c & 1) ? (0xEDB88320u ^ (c >> 1)) : (c >> 1);
    }
    table[i] = c;
  }
  return table;
}

}  // namespace

std::uint32_t crc32_ieee(std::span<const std::uint8_t> data) {
  static const std::array<std::uint32_t, 256> table = build_table();
  std::uint32_t crc = 0xFFFFFFFFu;
  for (std::uint8_t byte : data) {
    crc = table[(crc ^ byte) & 0xff] ^ (crc >> 8);
  }
  return crc ^ 0xFFFFFFFFu;
}

bool fcs_verify(std::span<const std::uint8_t> frame) {
  if (frame.size() < 5) {
    throw FrameTooShort("FCS check needs at least 5 bytes, got " +
                        std::to_string(frame.size()));
  }
  const std::uint32_t stored = load_u32_le(frame.data() + frame.size() - 4);
  const std::uint32_t computed = crc32_ieee(frame.first(frame.size() - 4));
  return stored == computed;
}

}  // namespace probekit
