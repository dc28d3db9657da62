#pragma once

#include <cstdint>
#include <span>

namespace probekit {

// IEEE CRC-32 as used by the 802.11 FCS: reflected polynomial 0xEDB88320,
// initial value and final XOR 0xFFFFFFFF. Check value: crc32_ieee("123456789")
// == 0xCBF43926.
std::uint32_t crc32_ieee(std::span<const std::uint8_t> data);

// True iff the trailing four bytes are the little-endian CRC-32 of the
// preceding bytes. Throws FrameTooShort for frames under five bytes.
bool fcs_verify(std::span<const std::uint8_t> frame);

}  // namespace probekit
