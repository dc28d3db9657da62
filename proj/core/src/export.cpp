#include "probekit/export.hpp"

#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

#include "probekit/bytes.hpp"

namespace probekit {

void append_u16_be(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0x0f]);
  }
  return out;
}

std::string format_seconds_ns(std::int64_t ns, int decimals) {
  const bool negative = ns < 0;
  std::uint64_t abs_ns = negative ? static_cast<std::uint64_t>(-ns) : static_cast<std::uint64_t>(ns);
  std::uint64_t secs = abs_ns / 1'000'000'000ull;
  std::uint64_t frac = abs_ns % 1'000'000'000ull;
  // Round the fraction to the requested precision.
  std::uint64_t scale = 1;
  for (int i = 0; i < 9 - decimals; ++i) scale *= 10;
  frac = (frac + scale / 2) / scale;
  std::uint64_t carry_limit = 1;
  for (int i = 0; i < decimals; ++i) carry_limit *= 10;
  if (frac >= carry_limit) {
    frac -= carry_limit;
    secs += 1;
  }
  char buf[48];
  if (decimals > 0) {
    std::snprintf(buf, sizeof(buf), "%s%llu.%0*llu", negative ? "-" : "",
                  static_cast<unsigned long long>(secs), decimals,
                  static_cast<unsigned long long>(frac));
  } else {
    std::snprintf(buf, sizeof(buf), "%s%llu", negative ? "-" : "",
                  static_cast<unsigned long long>(secs));
  }
  return std::string(buf);
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return std::string(buf);
}

std::string csv_quote(std::string_view field) {
  bool needs_quotes = false;
  std::string escaped;
  escaped.reserve(field.size());
  for (unsigned char c : field) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') needs_quotes = true;
    if (c == '"') {
      escaped += "\"\"";
    } else if (c < 0x20 || c == 0x7f) {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "\\x%02x", c);
      escaped += buf;
    } else {
      escaped += static_cast<char>(c);
    }
  }
  if (!needs_quotes) return escaped;
  return "\"" + escaped + "\"";
}

void write_partition_csv(std::ostream& out, std::span<const AnonymityPartition> partitions,
                         bool header) {
  if (header) out << "selector,set_rank,key_hex,device_count,request_count\n";
  for (const AnonymityPartition& p : partitions) {
    std::size_t rank = 1;
    for (const AnonymitySet& set : p.sets) {
      out << csv_quote(p.selector.name) << ',' << rank << ',' << set.key.hex() << ','
          << set.device_count << ',' << set.request_count << '\n';
      ++rank;
    }
  }
}

void write_ttt_csv(std::ostream& out, std::span<const TtTMeasurement> measurements, bool header) {
  if (header) out << "station,ap,start_ts,end_ts,duration_s,degraded\n";
  for (const TtTMeasurement& m : measurements) {
    out << m.station.to_string() << ',' << m.ap.to_string() << ','
        << format_seconds_ns(m.start_ns) << ',' << format_seconds_ns(m.end_ns) << ','
        << format_seconds_ns(m.end_ns - m.start_ns) << ',' << (m.degraded ? "true" : "false")
        << '\n';
  }
}

namespace {

nlohmann::ordered_json set_to_json(const AnonymitySet& set, std::size_t rank) {
  nlohmann::ordered_json j;
  j["rank"] = rank;
  j["key_hex"] = set.key.hex();
  j["device_count"] = set.device_count;
  j["request_count"] = set.request_count;
  if (!set.members.empty()) {
    auto& members = j["members"] = nlohmann::ordered_json::array();
    for (const MacAddress& mac : set.members) members.push_back(mac.to_string());
  }
  return j;
}

}  // namespace

std::string report_to_json(std::span<const SelectorComparisonRow> rows,
                           std::span<const AnonymityPartition> partitions,
                           std::span<const AnonymityReport> reports) {
  nlohmann::ordered_json j;
  auto& arr = j["selectors"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    nlohmann::ordered_json entry;
    entry["name"] = rows[i].selector;
    entry["set_count"] = rows[i].set_count;
    entry["total_devices"] = rows[i].total_devices;
    entry["largest"] = {{"devices", rows[i].largest_devices},
                        {"requests", rows[i].largest_requests},
                        {"fraction", rows[i].largest_fraction}};
    entry["dominant"] = {{"key_hex", rows[i].dominant_key.hex()},
                         {"decoded", rows[i].dominant_decoded}};
    if (i < reports.size()) {
      auto& histogram = entry["histogram"] = nlohmann::ordered_json::array();
      for (const auto& [requests, devices] : reports[i].histogram) {
        histogram.push_back(nlohmann::ordered_json::array({requests, devices}));
      }
    }
    if (i < partitions.size()) {
      auto& sets = entry["sets"] = nlohmann::ordered_json::array();
      std::size_t rank = 1;
      for (const AnonymitySet& set : partitions[i].sets) {
        sets.push_back(set_to_json(set, rank++));
      }
    }
    arr.push_back(std::move(entry));
  }
  return j.dump(2);
}

std::string ttt_to_json(std::span<const TtTMeasurement> measurements, const SummaryStats* summary,
                        bool population_std) {
  nlohmann::ordered_json j;
  auto& arr = j["measurements"] = nlohmann::ordered_json::array();
  for (const TtTMeasurement& m : measurements) {
    nlohmann::ordered_json entry;
    entry["station"] = m.station.to_string();
    entry["ap"] = m.ap.to_string();
    entry["start_ts_ns"] = m.start_ns;
    entry["end_ts_ns"] = m.end_ns;
    entry["duration_s"] = m.duration_s();
    entry["degraded"] = m.degraded;
    entry["start_frame"] = m.start_frame_ref;
    entry["end_frame"] = m.end_frame_ref;
    arr.push_back(std::move(entry));
  }
  if (summary != nullptr) {
    j["summary"] = {{"count", measurements.size()},
                    {"mean_s", summary->mean},
                    {"median_s", summary->median},
                    {"stddev_s", summary->stddev},
                    {"population_std", population_std}};
  }
  return j.dump(2);
}

std::string probes_to_json(std::span<const ProbeRequestRecord> probes, const ParseStats& stats,
                           std::uint64_t uaa_count, std::uint64_t laa_count) {
  nlohmann::ordered_json j;
  auto& arr = j["probe_requests"] = nlohmann::ordered_json::array();
  for (const ProbeRequestRecord& probe : probes) {
    nlohmann::ordered_json entry;
    entry["ts_ns"] = probe.timestamp_ns;
    entry["sa"] = probe.header.sa.to_string();
    entry["seq"] = probe.header.sequence_number();
    entry["frame_length"] = probe.frame_length;
    const auto ssid = probe.ssid();
    if (ssid.has_value()) {
      entry["ssid_hex"] = to_hex(*ssid);
    } else {
      entry["ssid_hex"] = nullptr;
    }
    auto& tags = entry["tags"] = nlohmann::ordered_json::array();
    for (const InformationElement& ie : probe.ies) tags.push_back(ie.tag_id);
    if (probe.channel_hint) entry["channel"] = *probe.channel_hint;
    arr.push_back(std::move(entry));
  }
  j["stats"] = {{"total", stats.total},
                {"probe_requests", stats.probe_requests},
                {"probe_responses", stats.probe_responses},
                {"data_frames", stats.data_frames},
                {"other", stats.other},
                {"unparseable", stats.unparseable},
                {"uaa_probe_requests", uaa_count},
                {"laa_probe_requests", laa_count}};
  return j.dump(2);
}

}  // namespace probekit
