#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

namespace probekit {

// 48-bit MAC address in transmission order: octet 0 is the first byte on the
// wire and carries the group bit (0x01) and the U/L bit (0x02).
class MacAddress {
 public:
  MacAddress() = default;
  explicit MacAddress(const std::array<std::uint8_t, 6>& octets) : octets_(octets) {}

  // Accepts lower- or upper-case colon-separated hex ("02:11:22:33:44:55").
  static std::optional<MacAddress> parse(std::string_view text);
  static MacAddress broadcast() { return MacAddress({0xff, 0xff, 0xff, 0xff, 0xff, 0xff}); }

  const std::array<std::uint8_t, 6>& octets() const { return octets_; }
  std::uint8_t operator[](std::size_t i) const { return octets_[i]; }

  bool locally_administered() const { return (octets_[0] & 0x02) != 0; }
  bool group() const { return (octets_[0] & 0x01) != 0; }

  // First three octets, the manufacturer identifier.
  std::array<std::uint8_t, 3> oui() const { return {octets_[0], octets_[1], octets_[2]}; }

  // Lower-case colon-separated hex; parse(to_string(m)) == m.
  std::string to_string() const;

  auto operator<=>(const MacAddress&) const = default;

 private:
  std::array<std::uint8_t, 6> octets_{};
};

inline bool is_locally_administered(const MacAddress& mac) { return mac.locally_administered(); }
inline bool is_group(const MacAddress& mac) { return mac.group(); }

// Draws a locally-administered unicast address: U/L bit set, group bit clear,
// remaining 46 bits uniform. Same rng state, same address.
MacAddress random_laa(std::mt19937_64& rng);
MacAddress random_laa(std::uint64_t seed);

}  // namespace probekit
