#include "probekit/information_element.hpp"

#include "probekit/errors.hpp"

namespace probekit {

const char* tag_name(std::uint8_t tag_id) {
  switch (tag_id) {
    case ie_tag::kSsid: return "SSID";
    case ie_tag::kSupportedRates: return "Supported Rates";
    case ie_tag::kDsParameter: return "DS Parameter Set";
    case ie_tag::kHtCapabilities: return "HT Capabilities";
    case ie_tag::kExtendedSupportedRates: return "Extended Supported Rates";
    case ie_tag::kInterworking: return "Interworking";
    case ie_tag::kExtendedCapabilities: return "Extended Capabilities";
    case ie_tag::kVhtCapabilities: return "VHT Capabilities";
    case ie_tag::kVendorSpecific: return "Vendor Specific";
    case ie_tag::kElementExtension: return "Element Extension";
    default: return nullptr;
  }
}

SupportedRates default_rates() { return SupportedRates{{0x02, 0x04, 0x0b, 0x16}}; }

IeDecodeResult decode_ies(std::span<const std::uint8_t> body) {
  IeDecodeResult result;
  std::size_t pos = 0;
  while (pos < body.size()) {
    if (body.size() - pos < 2) {
      // A lone tag byte with no length field overruns just like a bad length.
      result.error = TruncatedElement{pos, body[pos], 0};
      return result;
    }
    const std::uint8_t tag = body[pos];
    const std::uint8_t len = body[pos + 1];
    if (body.size() - pos - 2 < len) {
      result.error = TruncatedElement{pos, tag, len};
      return result;
    }
    InformationElement element;
    element.tag_id = tag;
    const auto* body_begin = body.data() + pos + 2;
    element.body.assign(body_begin, body_begin + len);
    result.elements.push_back(std::move(element));
    pos += 2 + static_cast<std::size_t>(len);
  }
  return result;
}

void encode_ies(std::span<const InformationElement> ies, std::vector<std::uint8_t>& out) {
  for (const auto& ie : ies) {
    if (ie.body.size() > 255) {
      throw OversizedElement("element tag " + std::to_string(ie.tag_id) + " body is " +
                             std::to_string(ie.body.size()) + " bytes, limit 255");
    }
    out.push_back(ie.tag_id);
    out.push_back(static_cast<std::uint8_t>(ie.body.size()));
    out.insert(out.end(), ie.body.begin(), ie.body.end());
  }
}

std::vector<std::uint8_t> encode_ies(std::span<const InformationElement> ies) {
  std::vector<std::uint8_t> out;
  encode_ies(ies, out);
  return out;
}

const InformationElement* find_first(std::span<const InformationElement> ies,
                                     std::uint8_t tag_id) {
  for (const auto& ie : ies) {
    if (ie.tag_id == tag_id) return &ie;
  }
  return nullptr;
}

}  // namespace probekit
