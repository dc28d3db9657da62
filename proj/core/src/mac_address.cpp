#include "probekit/mac_address.hpp"

#include <cctype>
#include <cstdio>

namespace probekit {

namespace {

int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::optional<MacAddress> MacAddress::parse(std::string_view text) {
  if (text.size() != 17) return std::nullopt;
  std::array<std::uint8_t, 6> octets{};
  for (std::size_t i = 0; i < 6; ++i) {
    const std::size_t pos = i * 3;
    const int hi = hex_nibble(text[pos]);
    const int lo = hex_nibble(text[pos + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    if (i < 5 && text[pos + 2] != ':') return std::nullopt;
    octets[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return MacAddress(octets);
}

std::string MacAddress::to_string() const {
  char buf[18];
  std::snprintf(buf, sizeof(buf), "%02x:%02x:%02x:%02x:%02x:%02x", octets_[0], octets_[1],
                octets_[2], octets_[3], octets_[4], octets_[5]);
  return std::string(buf);
}

MacAddress random_laa(std::mt19937_64& rng) {
  const std::uint64_t bits = rng();
  std::array<std::uint8_t, 6> octets{};
  for (std::size_t i = 0; i < 6; ++i) {
    octets[i] = static_cast<std::uint8_t>((bits >> (8 * i)) & 0xff);
  }
  octets[0] = static_cast<std::uint8_t>((octets[0] | 0x02) & ~0x01);
  return MacAddress(octets);
}

MacAddress random_laa(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_laa(rng);
}

}  // namespace probekit
