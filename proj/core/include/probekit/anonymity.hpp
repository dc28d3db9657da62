#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "probekit/fingerprint.hpp"

namespace probekit {

struct AnonymitySet {
  FingerprintKey key;
  std::uint64_t device_count = 0;
  std::uint64_t request_count = 0;
  std::vector<MacAddress> members;  // filled only on request
};

// Devices grouped by representative key. Sets are ordered by descending
// device count, then ascending key bytes, so reports are deterministic.
struct AnonymityPartition {
  FieldSelector selector;
  std::vector<AnonymitySet> sets;

  std::uint64_t total_devices() const;
  std::uint64_t total_requests() const;
};

AnonymityPartition partition(std::span<const DeviceRecord> devices, const FieldSelector& selector,
                             bool keep_members = false);

struct AnonymityReport {
  std::size_t set_count = 0;
  std::uint64_t total_devices = 0;
  std::uint64_t largest_set_devices = 0;
  std::uint64_t largest_set_requests = 0;
  double largest_fraction = 0.0;  // exact quotient; rounded only at presentation
  // One (request_count, device_count) pair per set: x = set size in requests,
  // y = devices sharing the key.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> histogram;
};

AnonymityReport report(const AnonymityPartition& partition, std::uint64_t total_devices);

struct SelectorComparisonRow {
  std::string selector;
  std::size_t set_count = 0;
  std::uint64_t total_devices = 0;
  std::uint64_t largest_devices = 0;
  std::uint64_t largest_requests = 0;
  double largest_fraction = 0.0;
  FingerprintKey dominant_key;
  std::string dominant_decoded;  // decoded content of the largest set's key
};

// One row per selector over the same traffic, plus the decoded dominant key.
std::vector<SelectorComparisonRow> compare_selectors(std::span<const DeviceTraffic> traffic,
                                                     std::span<const FieldSelector> selectors,
                                                     DeviceKeyPolicy policy = DeviceKeyPolicy::Mode);

}  // namespace probekit
