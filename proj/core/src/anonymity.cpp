#include "probekit/anonymity.hpp"

#include <algorithm>
#include <map>

namespace probekit {

std::uint64_t AnonymityPartition::total_devices() const {
  std::uint64_t total = 0;
  for (const auto& set : sets) total += set.device_count;
  return total;
}

std::uint64_t AnonymityPartition::total_requests() const {
  std::uint64_t total = 0;
  for (const auto& set : sets) total += set.request_count;
  return total;
}

AnonymityPartition partition(std::span<const DeviceRecord> devices, const FieldSelector& selector,
                             bool keep_members) {
  std::map<FingerprintKey, AnonymitySet> by_key;
  for (const DeviceRecord& device : devices) {
    AnonymitySet& set = by_key[device.representative_key];
    set.device_count++;
    set.request_count += device.request_count;
    if (keep_members) set.members.push_back(device.mac);
  }

  AnonymityPartition result;
  result.selector = selector;
  result.sets.reserve(by_key.size());
  for (auto& [key, set] : by_key) {
    set.key = key;
    if (keep_members) std::sort(set.members.begin(), set.members.end());
    result.sets.push_back(std::move(set));
  }
  std::sort(result.sets.begin(), result.sets.end(),
            [](const AnonymitySet& a, const AnonymitySet& b) {
              if (a.device_count != b.device_count) return a.device_count > b.device_count;
              return a.key < b.key;
            });
  return result;
}

AnonymityReport report(const AnonymityPartition& partition, std::uint64_t total_devices) {
  AnonymityReport out;
  out.set_count = partition.sets.size();
  out.total_devices = total_devices;
  if (!partition.sets.empty()) {
    out.largest_set_devices = partition.sets.front().device_count;
    out.largest_set_requests = partition.sets.front().request_count;
  }
  out.largest_fraction =
      total_devices == 0 ? 0.0
                         : static_cast<double>(out.largest_set_devices) /
                               static_cast<double>(total_devices);
  out.histogram.reserve(partition.sets.size());
  for (const auto& set : partition.sets) {
    out.histogram.emplace_back(set.request_count, set.device_count);
  }
  return out;
}

std::vector<SelectorComparisonRow> compare_selectors(std::span<const DeviceTraffic> traffic,
                                                     std::span<const FieldSelector> selectors,
                                                     DeviceKeyPolicy policy) {
  std::vector<SelectorComparisonRow> rows;
  rows.reserve(selectors.size());
  for (const FieldSelector& selector : selectors) {
    const std::vector<DeviceRecord> devices = device_keys(traffic, selector, policy);
    const AnonymityPartition parts = partition(devices, selector);
    const AnonymityReport rep = report(parts, parts.total_devices());

    SelectorComparisonRow row;
    row.selector = selector.name;
    row.set_count = rep.set_count;
    row.total_devices = rep.total_devices;
    row.largest_devices = rep.largest_set_devices;
    row.largest_requests = rep.largest_set_requests;
    row.largest_fraction = rep.largest_fraction;
    if (!parts.sets.empty()) {
      row.dominant_key = parts.sets.front().key;
      row.dominant_decoded = describe_key(row.dominant_key, selector);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace probekit
