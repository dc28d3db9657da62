#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "probekit/frame.hpp"
#include "probekit/information_element.hpp"
#include "probekit/mac_address.hpp"

namespace probekit {

// One tag position in a selector. For tag 255 an extension id narrows the
// match to that extended element; without one, any extension matches.
struct TagRef {
  std::uint8_t tag_id = 0;
  std::optional<std::uint8_t> extension_id;

  bool operator==(const TagRef&) const = default;
};

// Chooses which element content enters the fingerprint. A selector either
// lists tags explicitly (in key order) or keys on the full element set of
// each frame (full_ie). SSID content is excluded unless include_ssid is set;
// include_bss_membership appends the BSS-membership-selector bytes found in
// the rates elements.
struct FieldSelector {
  std::string name;
  std::vector<TagRef> tags;
  bool include_ssid = false;
  bool full_ie = false;
  bool include_bss_membership = false;
};

namespace selectors {

FieldSelector rates_only();   // [1]
FieldSelector rates_ds();     // [1, 3]
FieldSelector rates_ds_ht();  // [1, 3, 45]
FieldSelector full_ie();

// Field sets of published fingerprinting attacks.
FieldSelector vanhoef_2016();  // every field, SSID included
FieldSelector gu_2020();       // [1, 50, 3, 45, 191, 127]
FieldSelector pintor_2022();   // [45, 127, 221]
FieldSelector uras_2020();     // [50, 3, 45, 191, 127] + BSS membership

// Resolves a preset name or a comma-separated tag list ("rates,ds", "1,3,45",
// "255:35"). Returns nullopt for unknown names.
std::optional<FieldSelector> parse(std::string_view text);

std::vector<std::string> preset_names();

}  // namespace selectors

// Canonical byte key; equality defines the anonymity partition.
struct FingerprintKey {
  std::vector<std::uint8_t> bytes;

  std::string hex() const;

  auto operator<=>(const FingerprintKey&) const = default;
};

// Serializes the selected element content of one frame:
//   per selected tag, in selector order:  absent -> 00
//                                         present -> 01, u16be total length,
//                                                    bodies in frame order
// full_ie selectors prepend the frame's tag-id sequence and then serialize
// every distinct tag present, in first-occurrence order.
FingerprintKey fingerprint_of(std::span<const InformationElement> ies,
                              const FieldSelector& selector);

// Human-readable rendering of a key's sections ("rates={2,4,11,22} ds=absent").
std::string describe_key(const FingerprintKey& key, const FieldSelector& selector);

// Selector-independent per-device aggregate: every distinct element list the
// device sent, with counts and first-seen timestamps.
struct DeviceTraffic {
  struct Variant {
    std::vector<InformationElement> ies;
    std::uint64_t count = 0;
    std::int64_t first_seen_ns = 0;
    std::int64_t last_seen_ns = 0;
  };

  MacAddress mac;
  std::uint64_t request_count = 0;
  std::int64_t first_seen_ns = 0;
  std::int64_t last_seen_ns = 0;
  std::vector<Variant> variants;  // in first-seen order

  // Modal variant; ties go to the earliest-seen one.
  const Variant& representative_variant() const;
};

// Groups probe requests by source address, deterministically ordered by MAC.
// uaa_only drops locally-administered and group-addressed sources first.
std::vector<DeviceTraffic> aggregate_traffic(std::span<const ProbeRequestRecord> requests,
                                             bool uaa_only);

// How a device's single representative key is chosen from its variants.
// Mode and First key every selector off the same variant, so coarser
// selectors always merge whatever finer ones merged. PerVariant treats each
// distinct (MAC, element list) as its own device.
enum class DeviceKeyPolicy {
  Mode,
  First,
  PerVariant,
};

std::optional<DeviceKeyPolicy> parse_device_key_policy(std::string_view text);

struct DeviceRecord {
  MacAddress mac;
  std::uint64_t request_count = 0;
  std::int64_t first_seen_ns = 0;
  std::int64_t last_seen_ns = 0;
  std::map<FingerprintKey, std::uint64_t> fingerprints;  // key -> request count
  FingerprintKey representative_key;
};

std::vector<DeviceRecord> device_keys(std::span<const DeviceTraffic> traffic,
                                      const FieldSelector& selector,
                                      DeviceKeyPolicy policy = DeviceKeyPolicy::Mode);

// aggregate_traffic + device_keys in one step.
std::vector<DeviceRecord> aggregate_devices(std::span<const ProbeRequestRecord> requests,
                                            bool uaa_only, const FieldSelector& selector,
                                            DeviceKeyPolicy policy = DeviceKeyPolicy::Mode);

}  // namespace probekit
