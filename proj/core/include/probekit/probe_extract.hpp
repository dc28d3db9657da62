#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "probekit/frame.hpp"
#include "probekit/pcap.hpp"

namespace probekit {

// Per-capture frame tally. The five kind counters sum to total.
struct ParseStats {
  std::uint64_t total = 0;
  std::uint64_t probe_requests = 0;
  std::uint64_t probe_responses = 0;
  std::uint64_t data_frames = 0;
  std::uint64_t other = 0;        // management/control frames of other kinds
  std::uint64_t unparseable = 0;  // short, truncated-IE or radiotap-broken frames

  static constexpr std::size_t kMaxDiagnostics = 8;
  std::vector<std::string> diagnostics;  // sampled reasons for unparseable frames
};

struct ExtractOptions {
  // Treat frames as FCS-terminated even when radiotap gives no Flags field
  // (or when there is no radiotap header at all).
  bool assume_fcs = false;
};

struct ExtractResult {
  std::vector<ProbeRequestRecord> probes;  // sorted by timestamp
  ParseStats stats;
};

// Strips radiotap, drops FCS bytes when flagged, decodes management frames
// and returns the probe requests. Per-frame faults are counted, never fatal.
ExtractResult extract_probe_requests(std::span<const CaptureRecord> records,
                                     const ExtractOptions& options = {});

}  // namespace probekit
