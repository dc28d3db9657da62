#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace probekit {

// Little/big-endian scalar accessors for wire formats. 802.11 and classic
// pcap bodies are little-endian; pcap files written on big-endian hosts flip
// every header field, which the readers handle via the `swap` argument.

inline std::uint16_t load_u16_le(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

inline std::uint32_t load_u32_le(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

inline std::uint64_t load_u64_le(const std::uint8_t* p) {
  return static_cast<std::uint64_t>(load_u32_le(p)) |
         (static_cast<std::uint64_t>(load_u32_le(p + 4)) << 32);
}

inline void store_u16_le(std::uint8_t* p, std::uint16_t v) {
  p[0] = static_cast<std::uint8_t>(v & 0xff);
  p[1] = static_cast<std::uint8_t>(v >> 8);
}

inline void store_u32_le(std::uint8_t* p, std::uint32_t v) {
  p[0] = static_cast<std::uint8_t>(v & 0xff);
  p[1] = static_cast<std::uint8_t>((v >> 8) & 0xff);
  p[2] = static_cast<std::uint8_t>((v >> 16) & 0xff);
  p[3] = static_cast<std::uint8_t>((v >> 24) & 0xff);
}

inline std::uint16_t swap_u16(std::uint16_t v) {
  return static_cast<std::uint16_t>((v >> 8) | (v << 8));
}

inline std::uint32_t swap_u32(std::uint32_t v) {
  return ((v >> 24) & 0x000000ffu) | ((v >> 8) & 0x0000ff00u) | ((v << 8) & 0x00ff0000u) |
         ((v << 24) & 0xff000000u);
}

void append_u16_be(std::vector<std::uint8_t>& out, std::uint16_t v);

std::string to_hex(std::span<const std::uint8_t> bytes);

}  // namespace probekit
