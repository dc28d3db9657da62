#include "probekit/fingerprint.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <utility>

#include "probekit/bytes.hpp"

namespace probekit {

namespace {

constexpr std::uint8_t kAbsentMarker = 0x00;
constexpr std::uint8_t kPresentMarker = 0x01;

// BSS Membership Selector values ride in the rates elements with the basic
// flag set and the top of the 7-bit value range (HT PHY = 127, VHT = 126, ...).
bool is_membership_selector(std::uint8_t rate_byte) {
  return (rate_byte & 0x80) != 0 && (rate_byte & 0x7f) >= 120;
}

// full_ie keys match extended elements per extension id; explicit selectors
// listing a bare 255 match any extended element.
bool matches(const TagRef& ref, const InformationElement& ie, bool exact_extension) {
  if (ie.tag_id != ref.tag_id) return false;
  if (ref.tag_id != ie_tag::kElementExtension) return true;
  if (!ref.extension_id.has_value()) {
    return !exact_extension || !ie.extension_id().has_value();
  }
  return ie.extension_id() == ref.extension_id;
}

void append_section(std::vector<std::uint8_t>& out, std::span<const InformationElement> ies,
                    const TagRef& ref, bool exact_extension) {
  std::size_t total = 0;
  bool present = false;
  for (const auto& ie : ies) {
    if (matches(ref, ie, exact_extension)) {
      present = true;
      total += ie.body.size();
    }
  }
  if (!present) {
    out.push_back(kAbsentMarker);
    return;
  }
  out.push_back(kPresentMarker);
  append_u16_be(out, static_cast<std::uint16_t>(total));
  for (const auto& ie : ies) {
    if (matches(ref, ie, exact_extension)) {
      out.insert(out.end(), ie.body.begin(), ie.body.end());
    }
  }
}

std::vector<TagRef> distinct_frame_tags(std::span<const InformationElement> ies,
                                        bool include_ssid) {
  std::vector<TagRef> refs;
  for (const auto& ie : ies) {
    if (ie.tag_id == ie_tag::kSsid && !include_ssid) continue;
    TagRef ref{ie.tag_id, ie.extension_id()};
    if (std::find(refs.begin(), refs.end(), ref) == refs.end()) {
      refs.push_back(ref);
    }
  }
  return refs;
}

std::vector<std::uint8_t> membership_selector_bytes(std::span<const InformationElement> ies) {
  std::vector<std::uint8_t> bytes;
  for (const auto& ie : ies) {
    if (ie.tag_id != ie_tag::kSupportedRates && ie.tag_id != ie_tag::kExtendedSupportedRates) {
      continue;
    }
    for (std::uint8_t b : ie.body) {
      if (is_membership_selector(b)) bytes.push_back(b);
    }
  }
  return bytes;
}

std::string section_label(const TagRef& ref) {
  switch (ref.tag_id) {
    case ie_tag::kSsid: return "ssid";
    case ie_tag::kSupportedRates: return "rates";
    case ie_tag::kDsParameter: return "ds";
    case ie_tag::kHtCapabilities: return "ht";
    case ie_tag::kExtendedSupportedRates: return "xrates";
    case ie_tag::kInterworking: return "interworking";
    case ie_tag::kExtendedCapabilities: return "extcap";
    case ie_tag::kVhtCapabilities: return "vht";
    case ie_tag::kVendorSpecific: return "vendor";
    case ie_tag::kElementExtension:
      return ref.extension_id ? "ext" + std::to_string(*ref.extension_id) : "ext";
    default: return "tag" + std::to_string(ref.tag_id);
  }
}

std::string render_section_value(const TagRef& ref, std::span<const std::uint8_t> body) {
  if (body.empty()) return "empty";
  if (ref.tag_id == ie_tag::kSupportedRates || ref.tag_id == ie_tag::kExtendedSupportedRates) {
    std::string out = "{";
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i > 0) out += ",";
      out += std::to_string(body[i]);
    }
    return out + "}";
  }
  if (ref.tag_id == ie_tag::kDsParameter && body.size() == 1) {
    return "ch" + std::to_string(body[0]);
  }
  return "0x" + to_hex(body);
}

struct SectionCursor {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;

  bool read_section(bool& present, std::vector<std::uint8_t>& body) {
    if (pos >= bytes.size()) return false;
    const std::uint8_t marker = bytes[pos++];
    if (marker == kAbsentMarker) {
      present = false;
      body.clear();
      return true;
    }
    if (pos + 2 > bytes.size()) return false;
    const std::size_t len = (static_cast<std::size_t>(bytes[pos]) << 8) | bytes[pos + 1];
    pos += 2;
    if (pos + len > bytes.size()) return false;
    present = true;
    body.assign(bytes.data() + pos, bytes.data() + pos + len);
    pos += len;
    return true;
  }
};

// Variant identity for grouping: the exact element bytes.
std::vector<std::uint8_t> variant_identity(std::span<const InformationElement> ies) {
  return encode_ies(ies);
}

}  // namespace

namespace selectors {

FieldSelector rates_only() {
  return FieldSelector{"rates", {{ie_tag::kSupportedRates, {}}}, false, false, false};
}

FieldSelector rates_ds() {
  return FieldSelector{
      "rates,ds", {{ie_tag::kSupportedRates, {}}, {ie_tag::kDsParameter, {}}}, false, false,
      false};
}

FieldSelector rates_ds_ht() {
  return FieldSelector{"rates,ds,ht",
                       {{ie_tag::kSupportedRates, {}},
                        {ie_tag::kDsParameter, {}},
                        {ie_tag::kHtCapabilities, {}}},
                       false,
                       false,
                       false};
}

FieldSelector full_ie() { return FieldSelector{"full", {}, false, true, false}; }

FieldSelector vanhoef_2016() { return FieldSelector{"vanhoef2016", {}, true, true, false}; }

FieldSelector gu_2020() {
  return FieldSelector{"gu2020",
                       {{ie_tag::kSupportedRates, {}},
                        {ie_tag::kExtendedSupportedRates, {}},
                        {ie_tag::kDsParameter, {}},
                        {ie_tag::kHtCapabilities, {}},
                        {ie_tag::kVhtCapabilities, {}},
                        {ie_tag::kExtendedCapabilities, {}}},
                       false,
                       false,
                       false};
}

FieldSelector pintor_2022() {
  return FieldSelector{"pintor2022",
                       {{ie_tag::kHtCapabilities, {}},
                        {ie_tag::kExtendedCapabilities, {}},
                        {ie_tag::kVendorSpecific, {}}},
                       false,
                       false,
                       false};
}

FieldSelector uras_2020() {
  return FieldSelector{"uras2020",
                       {{ie_tag::kExtendedSupportedRates, {}},
                        {ie_tag::kDsParameter, {}},
                        {ie_tag::kHtCapabilities, {}},
                        {ie_tag::kVhtCapabilities, {}},
                        {ie_tag::kExtendedCapabilities, {}}},
                       false,
                       false,
                       true};
}

namespace {

std::string normalize(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '_' || c == '-' || c == ' ') continue;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::optional<TagRef> parse_tag_token(std::string_view token) {
  // numeric tag id, optionally "255:<ext>" for extended elements
  const auto colon = token.find(':');
  std::string_view id_part = colon == std::string_view::npos ? token : token.substr(0, colon);
  unsigned id = 0;
  auto [p, ec] = std::from_chars(id_part.data(), id_part.data() + id_part.size(), id);
  if (ec != std::errc() || p != id_part.data() + id_part.size() || id > 255) return std::nullopt;
  TagRef ref{static_cast<std::uint8_t>(id), {}};
  if (colon != std::string_view::npos) {
    std::string_view ext_part = token.substr(colon + 1);
    unsigned ext = 0;
    auto [pe, ece] = std::from_chars(ext_part.data(), ext_part.data() + ext_part.size(), ext);
    if (ece != std::errc() || pe != ext_part.data() + ext_part.size() || ext > 255) {
      return std::nullopt;
    }
    ref.extension_id = static_cast<std::uint8_t>(ext);
  }
  return ref;
}

std::optional<TagRef> alias_tag(const std::string& token) {
  if (token == "rates" || token == "supportedrates") return TagRef{ie_tag::kSupportedRates, {}};
  if (token == "ds" || token == "dsparameter" || token == "channel") {
    return TagRef{ie_tag::kDsParameter, {}};
  }
  if (token == "ht" || token == "htcapabilities") return TagRef{ie_tag::kHtCapabilities, {}};
  if (token == "vht" || token == "vhtcapabilities") return TagRef{ie_tag::kVhtCapabilities, {}};
  if (token == "xrates" || token == "extrates" || token == "extendedsupportedrates") {
    return TagRef{ie_tag::kExtendedSupportedRates, {}};
  }
  if (token == "extcap" || token == "extendedcapabilities") {
    return TagRef{ie_tag::kExtendedCapabilities, {}};
  }
  if (token == "interworking" || token == "iw") return TagRef{ie_tag::kInterworking, {}};
  if (token == "vendor" || token == "vendorspecific") return TagRef{ie_tag::kVendorSpecific, {}};
  return std::nullopt;
}

}  // namespace

std::optional<FieldSelector> parse(std::string_view text) {
  const std::string whole = normalize(text);
  if (whole.empty()) return std::nullopt;
  if (whole == "full" || whole == "fullie") return full_ie();
  if (whole == "vanhoef2016" || whole == "vanhoef") return vanhoef_2016();
  if (whole == "gu2020" || whole == "gu") return gu_2020();
  if (whole == "pintor2022" || whole == "pintor") return pintor_2022();
  if (whole == "uras2020" || whole == "uras") return uras_2020();

  FieldSelector selector;
  selector.name = std::string(text);
  std::string_view rest(text);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string_view raw_token = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    const std::string token = normalize(raw_token);
    if (token.empty()) return std::nullopt;
    if (token == "ssid") {
      selector.include_ssid = true;
      continue;
    }
    if (token == "bssmembership" || token == "bssmem") {
      selector.include_bss_membership = true;
      continue;
    }
    std::optional<TagRef> ref = alias_tag(token);
    if (!ref) ref = parse_tag_token(token);
    if (!ref) return std::nullopt;
    if (std::find(selector.tags.begin(), selector.tags.end(), *ref) != selector.tags.end()) {
      return std::nullopt;  // tags must be unique within a selector
    }
    selector.tags.push_back(*ref);
  }
  if (selector.tags.empty() && !selector.include_ssid && !selector.include_bss_membership) {
    return std::nullopt;
  }
  return selector;
}

std::vector<std::string> preset_names() {
  return {"rates",      "rates,ds",   "rates,ds,ht", "full",
          "vanhoef2016", "gu2020",    "pintor2022",  "uras2020"};
}

}  // namespace selectors

std::string FingerprintKey::hex() const { return to_hex(bytes); }

FingerprintKey fingerprint_of(std::span<const InformationElement> ies,
                              const FieldSelector& selector) {
  FingerprintKey key;
  if (selector.full_ie) {
    append_u16_be(key.bytes, static_cast<std::uint16_t>(ies.size()));
    for (const auto& ie : ies) key.bytes.push_back(ie.tag_id);
    for (const TagRef& ref : distinct_frame_tags(ies, selector.include_ssid)) {
      append_section(key.bytes, ies, ref, /*exact_extension=*/true);
    }
  } else {
    if (selector.include_ssid) {
      const TagRef ssid_ref{ie_tag::kSsid, {}};
      if (std::find(selector.tags.begin(), selector.tags.end(), ssid_ref) ==
          selector.tags.end()) {
        append_section(key.bytes, ies, ssid_ref, /*exact_extension=*/false);
      }
    }
    for (const TagRef& ref : selector.tags) {
      append_section(key.bytes, ies, ref, /*exact_extension=*/false);
    }
  }
  if (selector.include_bss_membership) {
    const std::vector<std::uint8_t> bytes = membership_selector_bytes(ies);
    if (bytes.empty()) {
      key.bytes.push_back(kAbsentMarker);
    } else {
      key.bytes.push_back(kPresentMarker);
      append_u16_be(key.bytes, static_cast<std::uint16_t>(bytes.size()));
      key.bytes.insert(key.bytes.end(), bytes.begin(), bytes.end());
    }
  }
  return key;
}

std::string describe_key(const FingerprintKey& key, const FieldSelector& selector) {
  SectionCursor cursor{key.bytes};
  std::vector<TagRef> refs;
  std::string out;

  if (selector.full_ie) {
    if (key.bytes.size() < 2) return "0x" + key.hex();
    const std::size_t count = (static_cast<std::size_t>(key.bytes[0]) << 8) | key.bytes[1];
    if (key.bytes.size() < 2 + count) return "0x" + key.hex();
    out = "tags=[";
    std::vector<InformationElement> pseudo;
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint8_t tag = key.bytes[2 + i];
      if (i > 0) out += ",";
      out += std::to_string(tag);
      pseudo.push_back(InformationElement{tag, {}});
    }
    out += "]";
    cursor.pos = 2 + count;
    // Section order mirrors the distinct tags; extension ids are recovered
    // from each section's leading body byte when rendering.
    refs = distinct_frame_tags(pseudo, selector.include_ssid);
  } else {
    if (selector.include_ssid) refs.push_back(TagRef{ie_tag::kSsid, {}});
    refs.insert(refs.end(), selector.tags.begin(), selector.tags.end());
  }

  for (const TagRef& ref : refs) {
    bool present = false;
    std::vector<std::uint8_t> body;
    if (!cursor.read_section(present, body)) return "0x" + key.hex();
    TagRef labeled = ref;
    if (ref.tag_id == ie_tag::kElementExtension && !ref.extension_id && !body.empty()) {
      labeled.extension_id = body[0];
    }
    if (!out.empty()) out += " ";
    out += section_label(labeled) + "=";
    out += present ? render_section_value(labeled, body) : "absent";
  }

  if (selector.include_bss_membership) {
    bool present = false;
    std::vector<std::uint8_t> body;
    // Membership section reuses the marker layout.
    if (cursor.pos < key.bytes.size() && key.bytes[cursor.pos] == kAbsentMarker) {
      cursor.pos++;
      present = false;
    } else if (!cursor.read_section(present, body)) {
      return "0x" + key.hex();
    }
    if (!out.empty()) out += " ";
    out += "bssmem=";
    if (!present) {
      out += "absent";
    } else {
      std::string vals = "{";
      for (std::size_t i = 0; i < body.size(); ++i) {
        if (i > 0) vals += ",";
        vals += std::to_string(body[i]);
      }
      out += vals + "}";
    }
  }
  return out;
}

const DeviceTraffic::Variant& DeviceTraffic::representative_variant() const {
  const Variant* best = &variants.front();
  for (const Variant& v : variants) {
    if (v.count > best->count) best = &v;
  }
  return *best;
}

std::vector<DeviceTraffic> aggregate_traffic(std::span<const ProbeRequestRecord> requests,
                                             bool uaa_only) {
  struct Accumulator {
    DeviceTraffic traffic;
    std::map<std::vector<std::uint8_t>, std::size_t> variant_index;
  };
  std::map<MacAddress, Accumulator> by_mac;

  for (const auto& request : requests) {
    const MacAddress& sa = request.header.sa;
    if (uaa_only && (sa.locally_administered() || sa.group())) continue;

    auto [it, inserted] = by_mac.try_emplace(sa);
    Accumulator& acc = it->second;
    if (inserted) {
      acc.traffic.mac = sa;
      acc.traffic.first_seen_ns = request.timestamp_ns;
      acc.traffic.last_seen_ns = request.timestamp_ns;
    } else {
      acc.traffic.first_seen_ns = std::min(acc.traffic.first_seen_ns, request.timestamp_ns);
      acc.traffic.last_seen_ns = std::max(acc.traffic.last_seen_ns, request.timestamp_ns);
    }
    acc.traffic.request_count++;

    std::vector<std::uint8_t> identity = variant_identity(request.ies);
    auto [vit, vinserted] = acc.variant_index.try_emplace(std::move(identity), 0);
    if (vinserted) {
      vit->second = acc.traffic.variants.size();
      DeviceTraffic::Variant variant;
      variant.ies = request.ies;
      variant.count = 1;
      variant.first_seen_ns = request.timestamp_ns;
      variant.last_seen_ns = request.timestamp_ns;
      acc.traffic.variants.push_back(std::move(variant));
    } else {
      DeviceTraffic::Variant& variant = acc.traffic.variants[vit->second];
      variant.count++;
      variant.first_seen_ns = std::min(variant.first_seen_ns, request.timestamp_ns);
      variant.last_seen_ns = std::max(variant.last_seen_ns, request.timestamp_ns);
    }
  }

  std::vector<DeviceTraffic> result;
  result.reserve(by_mac.size());
  for (auto& [mac, acc] : by_mac) {
    // First-seen variant order, ties broken by element bytes, so the modal
    // tie rule is independent of input order.
    std::vector<std::size_t> order(acc.traffic.variants.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::vector<std::vector<std::uint8_t>> identities(acc.traffic.variants.size());
    for (const auto& [identity, index] : acc.variant_index) identities[index] = identity;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto& va = acc.traffic.variants[a];
      const auto& vb = acc.traffic.variants[b];
      if (va.first_seen_ns != vb.first_seen_ns) return va.first_seen_ns < vb.first_seen_ns;
      return identities[a] < identities[b];
    });
    std::vector<DeviceTraffic::Variant> sorted;
    sorted.reserve(order.size());
    for (std::size_t i : order) sorted.push_back(std::move(acc.traffic.variants[i]));
    acc.traffic.variants = std::move(sorted);
    result.push_back(std::move(acc.traffic));
  }
  return result;
}

std::optional<DeviceKeyPolicy> parse_device_key_policy(std::string_view text) {
  if (text == "mode") return DeviceKeyPolicy::Mode;
  if (text == "first") return DeviceKeyPolicy::First;
  if (text == "per-variant" || text == "pervariant") return DeviceKeyPolicy::PerVariant;
  return std::nullopt;
}

std::vector<DeviceRecord> device_keys(std::span<const DeviceTraffic> traffic,
                                      const FieldSelector& selector, DeviceKeyPolicy policy) {
  std::vector<DeviceRecord> records;
  for (const DeviceTraffic& device : traffic) {
    if (device.variants.empty()) continue;

    if (policy == DeviceKeyPolicy::PerVariant) {
      for (const auto& variant : device.variants) {
        DeviceRecord record;
        record.mac = device.mac;
        record.request_count = variant.count;
        record.first_seen_ns = variant.first_seen_ns;
        record.last_seen_ns = variant.last_seen_ns;
        record.representative_key = fingerprint_of(variant.ies, selector);
        record.fingerprints[record.representative_key] = variant.count;
        records.push_back(std::move(record));
      }
      continue;
    }

    DeviceRecord record;
    record.mac = device.mac;
    record.request_count = device.request_count;
    record.first_seen_ns = device.first_seen_ns;
    record.last_seen_ns = device.last_seen_ns;
    for (const auto& variant : device.variants) {
      record.fingerprints[fingerprint_of(variant.ies, selector)] += variant.count;
    }
    const DeviceTraffic::Variant& representative = policy == DeviceKeyPolicy::First
                                                       ? device.variants.front()
                                                       : device.representative_variant();
    record.representative_key = fingerprint_of(representative.ies, selector);
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<DeviceRecord> aggregate_devices(std::span<const ProbeRequestRecord> requests,
                                            bool uaa_only, const FieldSelector& selector,
                                            DeviceKeyPolicy policy) {
  const std::vector<DeviceTraffic> traffic = aggregate_traffic(requests, uaa_only);
  return device_keys(traffic, selector, policy);
}

}  // namespace probekit
