#pragma once

// Shared fixtures and generators for the test suites. Everything here is
// deliberately independent of the production codecs: frames are assembled
// byte-by-byte from the published layouts so the tests can act as oracles.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "probekit/frame.hpp"
#include "probekit/information_element.hpp"
#include "probekit/mac_address.hpp"
#include "probekit/pcap.hpp"

namespace testutil {

inline probekit::MacAddress mac(std::initializer_list<std::uint8_t> octets) {
  std::array<std::uint8_t, 6> a{};
  std::size_t i = 0;
  for (std::uint8_t o : octets) a[i++] = o;
  return probekit::MacAddress(a);
}

inline probekit::MacAddress mac_from(const char* text) {
  return *probekit::MacAddress::parse(text);
}

// The canonical minimal generic probe: SA 02:11:22:33:44:55, sequence 0,
// empty SSID, rates 02 04 0b 16, no FCS. Assembled by hand from the layout.
inline std::vector<std::uint8_t> golden_generic_probe() {
  return {
      0x40, 0x00,                          // frame control: probe request
      0x00, 0x00,                          // duration
      0xff, 0xff, 0xff, 0xff, 0xff, 0xff,  // DA broadcast
      0x02, 0x11, 0x22, 0x33, 0x44, 0x55,  // SA
      0xff, 0xff, 0xff, 0xff, 0xff, 0xff,  // BSSID broadcast
      0x00, 0x00,                          // sequence control
      0x00, 0x00,                          // SSID, empty
      0x01, 0x04, 0x02, 0x04, 0x0b, 0x16,  // Supported Rates 1/2/5.5/11
  };
}

// Hand-rolled bit-by-bit CRC-32 (reflected 0x04C11DB7), deliberately distinct
// from the table-driven production code.
inline std::uint32_t reference_crc32(const std::vector<std::uint8_t>& data) {
  std::uint32_t crc = 0xFFFFFFFFu;
  for (std::uint8_t byte : data) {
    crc ^= byte;
    for (int bit = 0; bit < 8; ++bit) {
      crc = (crc & 1) ? (crc >> 1) ^ 0xEDB88320u : crc >> 1;
    }
  }
  return crc ^ 0xFFFFFFFFu;
}

// Raw 802.11 frame with an arbitrary header and IE tail, assembled manually.
inline std::vector<std::uint8_t> raw_frame(std::uint8_t fc0, std::uint8_t fc1,
                                           const probekit::MacAddress& a1,
                                           const probekit::MacAddress& a2,
                                           const probekit::MacAddress& a3, std::uint16_t seq_ctrl,
                                           const std::vector<std::uint8_t>& tail = {}) {
  std::vector<std::uint8_t> out = {fc0, fc1, 0x00, 0x00};
  out.insert(out.end(), a1.octets().begin(), a1.octets().end());
  out.insert(out.end(), a2.octets().begin(), a2.octets().end());
  out.insert(out.end(), a3.octets().begin(), a3.octets().end());
  out.push_back(static_cast<std::uint8_t>(seq_ctrl & 0xff));
  out.push_back(static_cast<std::uint8_t>(seq_ctrl >> 8));
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

// Pseudo-random but valid probe-request records for round-trip properties.
class RecordGenerator {
 public:
  explicit RecordGenerator(std::uint64_t seed) : rng_(seed) {}

  probekit::ProbeRequestRecord next() {
    probekit::ManagementHeader header;
    header.fc0 = 0x40;
    header.fc1 = 0x00;
    header.duration = static_cast<std::uint16_t>(rng_() & 0xffff);
    header.da = random_mac();
    header.sa = random_mac();
    header.bssid = random_mac();
    header.sequence_control = static_cast<std::uint16_t>(rng_() & 0xffff);

    std::vector<probekit::InformationElement> ies;
    const std::size_t ie_count = rng_() % 6;
    for (std::size_t i = 0; i < ie_count; ++i) {
      probekit::InformationElement ie;
      ie.tag_id = static_cast<std::uint8_t>(rng_() & 0xff);
      const std::size_t len = rng_() % 40;
      ie.body.resize(len);
      for (auto& b : ie.body) b = static_cast<std::uint8_t>(rng_() & 0xff);
      ies.push_back(std::move(ie));
    }
    return probekit::make_probe_request(static_cast<std::int64_t>(rng_() % 2'000'000'000) * 1000,
                                        header, std::move(ies));
  }

  std::vector<std::uint8_t> random_bytes(std::size_t max_len) {
    std::vector<std::uint8_t> out(rng_() % (max_len + 1));
    for (auto& b : out) b = static_cast<std::uint8_t>(rng_() & 0xff);
    return out;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  probekit::MacAddress random_mac() {
    std::array<std::uint8_t, 6> octets{};
    for (auto& o : octets) o = static_cast<std::uint8_t>(rng_() & 0xff);
    return probekit::MacAddress(octets);
  }

  std::mt19937_64 rng_;
};

}  // namespace testutil
