#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "probekit/frame.hpp"
#include "probekit/information_element.hpp"
#include "probekit/mac_address.hpp"
#include "probekit/pcap.hpp"

namespace probekit {

struct FixedSource {
  MacAddress mac;
};

// One locally-administered address drawn per burst, not per frame.
struct RandomLaaSource {
  std::uint64_t seed = 0;
};

struct SequentialSeq {
  std::uint16_t start = 0;
};

struct RandomSeq {
  std::uint64_t seed = 0;
};

// Recipe for a burst of generic probe requests: undirected (or directed at
// one SSID), with the element set reduced to SSID plus Supported Rates.
struct ProbeSpec {
  std::variant<FixedSource, RandomLaaSource> source = FixedSource{};
  std::optional<std::string> ssid;  // absent => empty SSID element
  SupportedRates rates = default_rates();
  std::variant<SequentialSeq, RandomSeq> seq_policy = SequentialSeq{};
  std::uint32_t burst_size = 1;
  std::int64_t intra_burst_gap_ns = 20'000'000;  // 20 ms
  std::int64_t start_time_ns = 0;
};

// Frame `index` of the burst: exactly [SSID, Supported Rates] in that order,
// broadcast DA and BSSID, duration 0, timestamp start + index * gap.
// Throws InvalidSpec (empty or >8 rates, SSID over 32 bytes, index out of
// range).
ProbeRequestRecord build_generic_probe(const ProbeSpec& spec, std::uint32_t index);

// Whole burst as capture records, encoded and ready for the pcap writer.
// Link type 105; with_radiotap prepends the minimal 8-byte header and flips
// the records to link type 127.
std::vector<CaptureRecord> build_burst(const ProbeSpec& spec, bool with_radiotap = false);

}  // namespace probekit
