#include "probekit/ttt.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "probekit/errors.hpp"
#include "probekit/frame.hpp"
#include "probekit/radiotap.hpp"

namespace probekit {

const char* event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::ProbeReq: return "probe-req";
    case EventKind::ProbeResp: return "probe-resp";
    case EventKind::Auth: return "auth";
    case EventKind::AssocReq: return "assoc-req";
    case EventKind::AssocResp: return "assoc-resp";
    case EventKind::Data: return "data";
    case EventKind::Other: return "other";
  }
  return "other";
}

namespace {

EventKind event_kind_for(FrameKind kind) {
  switch (kind) {
    case FrameKind::ProbeReq: return EventKind::ProbeReq;
    case FrameKind::ProbeResp: return EventKind::ProbeResp;
    case FrameKind::Auth: return EventKind::Auth;
    case FrameKind::AssocReq: return EventKind::AssocReq;
    case FrameKind::AssocResp: return EventKind::AssocResp;
    case FrameKind::Data: return EventKind::Data;
    default: return EventKind::Other;
  }
}

void fill_addresses(LinkEvent& event, const ManagementHeader& header) {
  const std::uint8_t type = (header.fc0 >> 2) & 0x03;
  if (type == 0x02) {
    // Data frames swap address roles with the ToDS/FromDS flags.
    const bool to_ds = (header.fc1 & 0x01) != 0;
    const bool from_ds = (header.fc1 & 0x02) != 0;
    if (to_ds && from_ds) {
      // Four-address frame; SA lives past the fixed header, leave it unset.
      event.da = header.bssid;
      return;
    }
    if (to_ds) {
      event.bssid = header.da;
      event.sa = header.sa;
      event.da = header.bssid;
    } else if (from_ds) {
      event.da = header.da;
      event.bssid = header.sa;
      event.sa = header.bssid;
    } else {
      event.da = header.da;
      event.sa = header.sa;
      event.bssid = header.bssid;
    }
    return;
  }
  event.da = header.da;
  event.sa = header.sa;
  event.bssid = header.bssid;
}

}  // namespace

std::vector<LinkEvent> classify(std::span<const CaptureRecord> records,
                                const ClassifyOptions& options) {
  std::vector<LinkEvent> events;
  events.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const CaptureRecord& record = records[i];
    LinkEvent event;
    event.timestamp_ns = record.timestamp_ns;
    event.frame_ref = i;

    std::span<const std::uint8_t> frame(record.payload);
    bool fcs = options.assume_fcs;
    bool broken = false;
    if (record.link_type == kLinkTypeRadiotap) {
      try {
        const auto [offset, info] = strip_radiotap(frame);
        frame = frame.subspan(offset);
        if (info.has_flags) fcs = info.fcs_present;
      } catch (const Error&) {
        broken = true;
      }
    }
    if (!broken && fcs && frame.size() >= 4) frame = frame.first(frame.size() - 4);

    const auto header = broken ? std::nullopt : decode_management_header(frame);
    if (header) {
      EventKind kind = event_kind_for(header->kind());
      if (kind == EventKind::Data && is_null_data(header->fc0) && !options.include_null_data) {
        kind = EventKind::Other;
      }
      event.kind = kind;
      if (kind != EventKind::Other) fill_addresses(event, *header);
      event.sa_is_laa = event.sa.has_value() && event.sa->locally_administered();
    }
    events.push_back(event);
  }
  return events;
}

namespace {

struct StreamEvent {
  const LinkEvent* event;
  MacAddress station;
  MacAddress ap;
};

bool is_connection_kind(EventKind kind) {
  return kind == EventKind::Auth || kind == EventKind::AssocReq ||
         kind == EventKind::AssocResp || kind == EventKind::Data;
}

bool is_exchange_kind(EventKind kind) {
  return kind == EventKind::Auth || kind == EventKind::AssocReq || kind == EventKind::AssocResp;
}

constexpr std::size_t kMaxDiagnostics = 16;

void diagnose(MeasureResult& result, std::string message) {
  if (result.diagnostics.size() < kMaxDiagnostics) {
    result.diagnostics.push_back(std::move(message));
  }
}

}  // namespace

MeasureResult measure(std::span<const LinkEvent> events, const TtTConfig& config) {
  MeasureResult result;

  // Probe responses indexed by the AP that sent them, in time order.
  std::map<MacAddress, std::vector<const LinkEvent*>> probe_resps;
  for (const LinkEvent& event : events) {
    if (event.kind == EventKind::ProbeResp && event.sa) {
      probe_resps[*event.sa].push_back(&event);
    }
  }

  // Connection streams per (station, AP) pair.
  std::map<std::pair<MacAddress, MacAddress>, std::vector<StreamEvent>> streams;
  for (const LinkEvent& event : events) {
    if (!is_connection_kind(event.kind) || !event.bssid) continue;
    const MacAddress ap = *event.bssid;
    if (config.ap_filter && ap != *config.ap_filter) continue;
    MacAddress station;
    if (event.sa && *event.sa != ap) {
      station = *event.sa;
    } else if (event.da && *event.da != ap) {
      station = *event.da;
    } else {
      continue;
    }
    if (station.group()) continue;
    streams[{station, ap}].push_back({&event, station, ap});
  }

  for (const auto& [pair, stream] : streams) {
    const auto& [station, ap] = pair;

    // Split into attempts at inactivity gaps.
    std::size_t begin = 0;
    while (begin < stream.size()) {
      std::size_t end = begin + 1;
      while (end < stream.size() &&
             stream[end].event->timestamp_ns - stream[end - 1].event->timestamp_ns <=
                 config.min_gap_between_attempts_ns) {
        ++end;
      }

      // One candidate attempt: stream[begin, end).
      const LinkEvent* first_exchange = nullptr;
      for (std::size_t i = begin; i < end; ++i) {
        if (is_exchange_kind(stream[i].event->kind)) {
          first_exchange = stream[i].event;
          break;
        }
      }
      if (first_exchange == nullptr) {
        begin = end;  // steady-state traffic, not a connection attempt
        continue;
      }

      const LinkEvent* end_frame = nullptr;
      for (std::size_t i = begin; i < end; ++i) {
        if (stream[i].event->kind == EventKind::Data &&
            stream[i].event->timestamp_ns >= first_exchange->timestamp_ns) {
          end_frame = stream[i].event;
          break;
        }
      }
      if (end_frame == nullptr) {
        result.attempts_without_data++;
        diagnose(result, "attempt " + station.to_string() + " -> " + ap.to_string() +
                             " has an auth/assoc exchange but no data frame");
        begin = end;
        continue;
      }

      std::int64_t station_first_ns = stream[begin].event->timestamp_ns;
      for (std::size_t i = begin; i < end; ++i) {
        if (stream[i].event->sa && *stream[i].event->sa == station) {
          station_first_ns = stream[i].event->timestamp_ns;
          break;
        }
      }

      const LinkEvent* start_frame = nullptr;
      bool degraded = false;
      const auto resp_it = probe_resps.find(ap);
      if (resp_it != probe_resps.end()) {
        // Latest response to a randomized (locally administered) scan address
        // within the lookback window before the station's first frame.
        for (const LinkEvent* resp : resp_it->second) {
          if (resp->timestamp_ns >= station_first_ns) break;
          if (resp->timestamp_ns < station_first_ns - config.lookback_window_ns) continue;
          if (!resp->da || !resp->da->locally_administered() || resp->da->group()) continue;
          if (*resp->da == station) continue;
          start_frame = resp;
        }
        if (start_frame == nullptr) {
          // No randomized phase seen: fall back to the response addressed to
          // the station itself, before the exchange began.
          for (const LinkEvent* resp : resp_it->second) {
            if (resp->timestamp_ns >= first_exchange->timestamp_ns) break;
            if (resp->da && *resp->da == station) start_frame = resp;
          }
          degraded = start_frame != nullptr;
        }
      }
      if (start_frame == nullptr) {
        result.attempts_without_start++;
        diagnose(result, "attempt " + station.to_string() + " -> " + ap.to_string() +
                             " has no usable probe response before it");
        begin = end;
        continue;
      }

      TtTMeasurement measurement;
      measurement.station = station;
      measurement.ap = ap;
      measurement.start_ns = start_frame->timestamp_ns;
      measurement.end_ns = end_frame->timestamp_ns;
      measurement.start_frame_ref = start_frame->frame_ref;
      measurement.end_frame_ref = end_frame->frame_ref;
      measurement.degraded = degraded;
      result.measurements.push_back(measurement);
      begin = end;
    }
  }

  std::sort(result.measurements.begin(), result.measurements.end(),
            [](const TtTMeasurement& a, const TtTMeasurement& b) {
              if (a.start_ns != b.start_ns) return a.start_ns < b.start_ns;
              return a.station < b.station;
            });
  return result;
}

SummaryStats stats(std::span<const double> durations, bool population) {
  if (durations.empty()) {
    throw EmptyInput("stats over an empty duration list");
  }
  SummaryStats out;
  const std::size_t n = durations.size();

  double sum = 0.0;
  for (double d : durations) sum += d;
  out.mean = sum / static_cast<double>(n);

  std::vector<double> sorted(durations.begin(), durations.end());
  std::sort(sorted.begin(), sorted.end());
  out.median = (n % 2 == 1) ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;

  if (n == 1) {
    out.stddev = 0.0;
  } else {
    double ss = 0.0;
    for (double d : durations) {
      const double delta = d - out.mean;
      ss += delta * delta;
    }
    out.stddev = std::sqrt(ss / static_cast<double>(population ? n : n - 1));
  }
  return out;
}

}  // namespace probekit
