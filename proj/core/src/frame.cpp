#include "probekit/frame.hpp"

#include "probekit/bytes.hpp"
#include "probekit/crc32.hpp"
#include "probekit/errors.hpp"

namespace probekit {

FrameKind classify_frame_control(std::uint8_t fc0) {
  const std::uint8_t type = (fc0 >> 2) & 0x03;
  const std::uint8_t subtype = (fc0 >> 4) & 0x0f;
  if (type == 0x02) return FrameKind::Data;
  if (type != 0x00) return FrameKind::Other;  // control or reserved
  switch (subtype) {
    case 0x00: return FrameKind::AssocReq;
    case 0x01: return FrameKind::AssocResp;
    case 0x04: return FrameKind::ProbeReq;
    case 0x05: return FrameKind::ProbeResp;
    case 0x08: return FrameKind::Beacon;
    case 0x0b: return FrameKind::Auth;
    default: return FrameKind::Other;
  }
}

bool is_null_data(std::uint8_t fc0) {
  return ((fc0 >> 2) & 0x03) == 0x02 && (fc0 & 0x40) != 0;
}

const char* frame_kind_name(FrameKind kind) {
  switch (kind) {
    case FrameKind::ProbeReq: return "probe-request";
    case FrameKind::ProbeResp: return "probe-response";
    case FrameKind::Beacon: return "beacon";
    case FrameKind::Auth: return "authentication";
    case FrameKind::AssocReq: return "association-request";
    case FrameKind::AssocResp: return "association-response";
    case FrameKind::Data: return "data";
    case FrameKind::Other: return "other";
  }
  return "other";
}

std::optional<std::span<const std::uint8_t>> ProbeRequestRecord::ssid() const {
  const InformationElement* element = find_first(ies, ie_tag::kSsid);
  if (element == nullptr) return std::nullopt;
  return std::span<const std::uint8_t>(element->body);
}

bool ProbeRequestRecord::undirected() const {
  const auto s = ssid();
  return s.has_value() && s->empty();
}

ProbeRequestRecord make_probe_request(std::int64_t timestamp_ns, const ManagementHeader& header,
                                      std::vector<InformationElement> ies, bool fcs_present) {
  ProbeRequestRecord record;
  record.timestamp_ns = timestamp_ns;
  record.header = header;
  record.ies = std::move(ies);
  record.fcs_present = fcs_present;
  std::size_t length = ManagementHeader::kSize;
  for (const auto& ie : record.ies) length += 2 + ie.body.size();
  record.frame_length = static_cast<std::uint32_t>(length);
  if (const auto* ds = find_first(record.ies, ie_tag::kDsParameter);
      ds != nullptr && !ds->body.empty()) {
    record.channel_hint = ds->body[0];
  }
  return record;
}

std::optional<ManagementHeader> decode_management_header(std::span<const std::uint8_t> frame) {
  if (frame.size() < ManagementHeader::kSize) return std::nullopt;
  ManagementHeader header;
  header.fc0 = frame[0];
  header.fc1 = frame[1];
  header.duration = load_u16_le(frame.data() + 2);
  std::array<std::uint8_t, 6> a{};
  std::copy_n(frame.begin() + 4, 6, a.begin());
  header.da = MacAddress(a);
  std::copy_n(frame.begin() + 10, 6, a.begin());
  header.sa = MacAddress(a);
  std::copy_n(frame.begin() + 16, 6, a.begin());
  header.bssid = MacAddress(a);
  header.sequence_control = load_u16_le(frame.data() + 22);
  return header;
}

void encode_management_header(const ManagementHeader& header, std::vector<std::uint8_t>& out) {
  out.push_back(header.fc0);
  out.push_back(header.fc1);
  std::uint8_t tmp[2];
  store_u16_le(tmp, header.duration);
  out.insert(out.end(), tmp, tmp + 2);
  const auto push_mac = [&out](const MacAddress& mac) {
    out.insert(out.end(), mac.octets().begin(), mac.octets().end());
  };
  push_mac(header.da);
  push_mac(header.sa);
  push_mac(header.bssid);
  store_u16_le(tmp, header.sequence_control);
  out.insert(out.end(), tmp, tmp + 2);
}

std::vector<std::uint8_t> encode_probe_request(const ProbeRequestRecord& record) {
  std::vector<std::uint8_t> out;
  out.reserve(record.frame_length + (record.fcs_present ? 4u : 0u));
  encode_management_header(record.header, out);
  encode_ies(record.ies, out);
  if (record.fcs_present) {
    const std::uint32_t crc = crc32_ieee(out);
    std::uint8_t tmp[4];
    store_u32_le(tmp, crc);
    out.insert(out.end(), tmp, tmp + 4);
  }
  return out;
}

std::optional<ProbeRequestRecord> decode_probe_request(std::span<const std::uint8_t> frame,
                                                       std::int64_t timestamp_ns,
                                                       std::string* error) {
  const auto header = decode_management_header(frame);
  if (!header) {
    if (error) *error = "frame shorter than the 24-byte management header";
    return std::nullopt;
  }
  if (header->kind() != FrameKind::ProbeReq) {
    if (error) *error = "not a probe request";
    return std::nullopt;
  }
  // Probe requests have no fixed fields between header and elements.
  auto decoded = decode_ies(frame.subspan(ManagementHeader::kSize));
  if (!decoded.ok()) {
    if (error) {
      *error = "truncated element at frame offset " +
               std::to_string(ManagementHeader::kSize + decoded.error->offset);
    }
    return std::nullopt;
  }
  return make_probe_request(timestamp_ns, *header, std::move(decoded.elements));
}

}  // namespace probekit
