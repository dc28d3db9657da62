#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "probekit/mac_address.hpp"
#include "probekit/pcap.hpp"

namespace probekit {

enum class EventKind : std::uint8_t {
  ProbeReq,
  ProbeResp,
  Auth,
  AssocReq,
  AssocResp,
  Data,
  Other,
};

const char* event_kind_name(EventKind kind);

// One capture record reduced to what the connection-time metric needs.
struct LinkEvent {
  std::int64_t timestamp_ns = 0;
  EventKind kind = EventKind::Other;
  std::optional<MacAddress> sa;
  std::optional<MacAddress> da;
  std::optional<MacAddress> bssid;
  bool sa_is_laa = false;
  std::size_t frame_ref = 0;  // index into the source capture
};

struct ClassifyOptions {
  bool assume_fcs = false;
  // Null-function data frames end no measurement unless requested.
  bool include_null_data = false;
};

// One event per record; frames that do not parse become Other. Data frames
// match on type bits alone, so QoS subtypes count.
std::vector<LinkEvent> classify(std::span<const CaptureRecord> records,
                                const ClassifyOptions& options = {});

struct TtTConfig {
  std::optional<MacAddress> ap_filter;
  std::int64_t lookback_window_ns = 30'000'000'000;        // 30 s
  std::int64_t min_gap_between_attempts_ns = 10'000'000'000;  // 10 s
};

// Interval from the last probe response the AP sent to the scanning
// (randomized) address until the first data frame of the established
// connection. degraded marks runs where no randomized-phase response existed
// and the response to the station's own address was used instead.
struct TtTMeasurement {
  MacAddress station;  // post-switch address
  MacAddress ap;
  std::int64_t start_ns = 0;
  std::int64_t end_ns = 0;
  std::size_t start_frame_ref = 0;
  std::size_t end_frame_ref = 0;
  bool degraded = false;

  double duration_s() const { return static_cast<double>(end_ns - start_ns) / 1e9; }
};

struct MeasureResult {
  std::vector<TtTMeasurement> measurements;
  std::uint32_t attempts_without_data = 0;   // auth/assoc seen, no data frame
  std::uint32_t attempts_without_start = 0;  // no usable probe response at all
  std::vector<std::string> diagnostics;
};

// Events must be sorted by timestamp. Per station/AP pair, attempts are
// separated by inactivity gaps longer than min_gap_between_attempts; each
// attempt ends at its first data frame after an auth/assoc exchange.
MeasureResult measure(std::span<const LinkEvent> events, const TtTConfig& config = {});

struct SummaryStats {
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;  // sample (n-1) unless population requested
};

// Throws EmptyInput for an empty list.
SummaryStats stats(std::span<const double> durations, bool population = false);

}  // namespace probekit
