#include "probekit/crafting.hpp"

#include <random>

#include "probekit/errors.hpp"
#include "probekit/radiotap.hpp"

namespace probekit {

namespace {

void validate(const ProbeSpec& spec) {
  if (spec.rates.rates.empty()) {
    throw InvalidSpec("rates must not be empty");
  }
  if (spec.rates.rates.size() > SupportedRates::kMaxElementEntries) {
    throw InvalidSpec("Supported Rates holds at most 8 entries, got " +
                      std::to_string(spec.rates.rates.size()));
  }
  if (spec.ssid && spec.ssid->size() > 32) {
    throw InvalidSpec("SSID is limited to 32 bytes, got " + std::to_string(spec.ssid->size()));
  }
  if (spec.burst_size < 1) {
    throw InvalidSpec("burst_size must be at least 1");
  }
  if (spec.intra_burst_gap_ns < 0) {
    throw InvalidSpec("intra-burst gap must not be negative");
  }
}

MacAddress burst_source(const ProbeSpec& spec) {
  if (const auto* fixed = std::get_if<FixedSource>(&spec.source)) {
    return fixed->mac;
  }
  return random_laa(std::get<RandomLaaSource>(spec.source).seed);
}

std::uint16_t sequence_for(const ProbeSpec& spec, std::uint32_t index) {
  if (const auto* seq = std::get_if<SequentialSeq>(&spec.seq_policy)) {
    return static_cast<std::uint16_t>((seq->start + index) & 0x0fff);
  }
  std::mt19937_64 rng(std::get<RandomSeq>(spec.seq_policy).seed);
  std::uint64_t draw = 0;
  for (std::uint32_t i = 0; i <= index; ++i) draw = rng();
  return static_cast<std::uint16_t>(draw & 0x0fff);
}

}  // namespace

ProbeRequestRecord build_generic_probe(const ProbeSpec& spec, std::uint32_t index) {
  validate(spec);
  if (index >= spec.burst_size) {
    throw InvalidSpec("frame index " + std::to_string(index) + " outside burst of " +
                      std::to_string(spec.burst_size));
  }

  ManagementHeader header;
  header.fc0 = 0x40;
  header.fc1 = 0x00;
  header.duration = 0;
  header.da = MacAddress::broadcast();
  header.sa = burst_source(spec);
  header.bssid = MacAddress::broadcast();
  header.sequence_control = static_cast<std::uint16_t>(sequence_for(spec, index) << 4);

  InformationElement ssid;
  ssid.tag_id = ie_tag::kSsid;
  if (spec.ssid) {
    ssid.body.assign(spec.ssid->begin(), spec.ssid->end());
  }
  InformationElement rates;
  rates.tag_id = ie_tag::kSupportedRates;
  rates.body = spec.rates.rates;

  return make_probe_request(spec.start_time_ns + static_cast<std::int64_t>(index) * spec.intra_burst_gap_ns,
                            header, {std::move(ssid), std::move(rates)});
}

std::vector<CaptureRecord> build_burst(const ProbeSpec& spec, bool with_radiotap) {
  validate(spec);
  std::vector<CaptureRecord> records;
  records.reserve(spec.burst_size);
  for (std::uint32_t i = 0; i < spec.burst_size; ++i) {
    const ProbeRequestRecord probe = build_generic_probe(spec, i);
    CaptureRecord record;
    record.timestamp_ns = probe.timestamp_ns;
    record.link_type = with_radiotap ? kLinkTypeRadiotap : kLinkTypeIeee80211;
    if (with_radiotap) {
      record.payload.assign(std::begin(kMinimalRadiotapHeader), std::end(kMinimalRadiotapHeader));
    }
    const std::vector<std::uint8_t> frame = encode_probe_request(probe);
    record.payload.insert(record.payload.end(), frame.begin(), frame.end());
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace probekit
