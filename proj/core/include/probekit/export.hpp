#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "probekit/anonymity.hpp"
#include "probekit/probe_extract.hpp"
#include "probekit/ttt.hpp"

namespace probekit {

// Fixed-point decimal renderings, locale-independent (dot separator). Used by
// every exporter so csv and json stay byte-stable across runs and machines.
std::string format_seconds_ns(std::int64_t ns, int decimals = 6);
std::string format_fixed(double value, int decimals);
std::string csv_quote(std::string_view field);

// Anonymity partition rows: selector,set_rank,key_hex,device_count,request_count
void write_partition_csv(std::ostream& out, std::span<const AnonymityPartition> partitions,
                         bool header = true);

// TtT rows: station,ap,start_ts,end_ts,duration_s,degraded
void write_ttt_csv(std::ostream& out, std::span<const TtTMeasurement> measurements,
                   bool header = true);

// JSON mirrors of the report types, returned as serialized text.
std::string report_to_json(std::span<const SelectorComparisonRow> rows,
                           std::span<const AnonymityPartition> partitions,
                           std::span<const AnonymityReport> reports);
std::string ttt_to_json(std::span<const TtTMeasurement> measurements,
                        const SummaryStats* summary, bool population_std);
std::string probes_to_json(std::span<const ProbeRequestRecord> probes, const ParseStats& stats,
                           std::uint64_t uaa_count, std::uint64_t laa_count);

}  // namespace probekit
