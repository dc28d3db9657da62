#include "probekit/probe_extract.hpp"

#include <algorithm>

#include "probekit/errors.hpp"
#include "probekit/radiotap.hpp"

namespace probekit {

namespace {

void note_unparseable(ParseStats& stats, std::size_t index, const std::string& reason) {
  ++stats.unparseable;
  if (stats.diagnostics.size() < ParseStats::kMaxDiagnostics) {
    stats.diagnostics.push_back("record " + std::to_string(index) + ": " + reason);
  }
}

}  // namespace

ExtractResult extract_probe_requests(std::span<const CaptureRecord> records,
                                     const ExtractOptions& options) {
  ExtractResult result;
  result.stats.total = records.size();

  for (std::size_t i = 0; i < records.size(); ++i) {
    const CaptureRecord& record = records[i];
    std::span<const std::uint8_t> frame(record.payload);
    bool fcs = options.assume_fcs;

    if (record.link_type == kLinkTypeRadiotap) {
      try {
        const auto [offset, info] = strip_radiotap(frame);
        frame = frame.subspan(offset);
        if (info.has_flags) fcs = info.fcs_present;
      } catch (const Error& e) {
        note_unparseable(result.stats, i, e.what());
        continue;
      }
    }

    if (fcs) {
      if (frame.size() < 4) {
        note_unparseable(result.stats, i, "flagged FCS but frame is shorter than 4 bytes");
        continue;
      }
      frame = frame.first(frame.size() - 4);
    }

    if (frame.size() < ManagementHeader::kSize) {
      // Control frames land here too; they carry nothing this toolkit reads.
      note_unparseable(result.stats, i, "frame shorter than the 24-byte header");
      continue;
    }

    switch (classify_frame_control(frame[0])) {
      case FrameKind::ProbeReq: {
        std::string reason;
        auto probe = decode_probe_request(frame, record.timestamp_ns, &reason);
        if (!probe) {
          note_unparseable(result.stats, i, reason);
          continue;
        }
        probe->fcs_present = fcs;
        ++result.stats.probe_requests;
        result.probes.push_back(std::move(*probe));
        break;
      }
      case FrameKind::ProbeResp:
        ++result.stats.probe_responses;
        break;
      case FrameKind::Data:
        ++result.stats.data_frames;
        break;
      default:
        ++result.stats.other;
        break;
    }
  }

  std::stable_sort(result.probes.begin(), result.probes.end(),
                   [](const ProbeRequestRecord& a, const ProbeRequestRecord& b) {
                     return a.timestamp_ns < b.timestamp_ns;
                   });
  return result;
}

}  // namespace probekit
