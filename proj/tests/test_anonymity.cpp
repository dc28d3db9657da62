#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "corpus.hpp"
#include "probekit/anonymity.hpp"
#include "testutil.hpp"

using namespace probekit;
using testutil::brute_force_set_sizes;
using testutil::corpus_with_distribution;
using testutil::nth_uaa;
using testutil::random_corpus;
using testutil::rates_ies;
using testutil::request_from;

TEST_CASE("three devices with keys K,K,L split into sets of 2 and 1") {
  std::vector<ProbeRequestRecord> requests;
  requests.push_back(request_from(nth_uaa(1), 100, rates_ies({0x02})));
  requests.push_back(request_from(nth_uaa(2), 200, rates_ies({0x02})));
  requests.push_back(request_from(nth_uaa(3), 300, rates_ies({0x04})));

  const auto devices = aggregate_devices(requests, true, selectors::rates_only());
  const AnonymityPartition parts = partition(devices, selectors::rates_only());
  REQUIRE(parts.sets.size() == 2);
  CHECK(parts.sets[0].device_count == 2);
  CHECK(parts.sets[1].device_count == 1);
  CHECK(parts.total_devices() == 3);
  CHECK(parts.total_requests() == 3);
}

TEST_CASE("every device lands in exactly one set") {
  const auto requests = random_corpus(11);
  const auto devices = aggregate_devices(requests, true, selectors::rates_ds());
  const AnonymityPartition parts = partition(devices, selectors::rates_ds(), /*keep_members=*/true);

  CHECK(parts.total_devices() == devices.size());
  std::set<MacAddress> seen;
  for (const auto& set : parts.sets) {
    CHECK(set.device_count == set.members.size());
    for (const auto& mac : set.members) {
      CHECK(seen.insert(mac).second);  // no device in two sets
    }
  }
  CHECK(seen.size() == devices.size());

  std::uint64_t requests_total = 0;
  for (const auto& device : devices) requests_total += device.request_count;
  CHECK(parts.total_requests() == requests_total);
}

TEST_CASE("report fractions reproduce the published percentages") {
  AnonymityPartition parts;
  parts.sets.push_back(AnonymitySet{FingerprintKey{{1}}, 12071, 282111, {}});
  const AnonymityReport r1 = report(parts, 14622);
  CHECK(r1.largest_fraction == doctest::Approx(12071.0 / 14622.0).epsilon(1e-12));
  CHECK(std::round(r1.largest_fraction * 10000) / 100 == doctest::Approx(82.55));

  parts.sets[0].device_count = 5920;
  const AnonymityReport r2 = report(parts, 14622);
  CHECK(std::round(r2.largest_fraction * 10000) / 100 == doctest::Approx(40.49));

  parts.sets[0].device_count = 3770;
  const AnonymityReport r3 = report(parts, 14622);
  CHECK(std::round(r3.largest_fraction * 10000) / 100 == doctest::Approx(25.78));
}

TEST_CASE("histogram mirrors the set list as (requests, devices) pairs") {
  const auto requests = random_corpus(23);
  const auto devices = aggregate_devices(requests, true, selectors::rates_only());
  const AnonymityPartition parts = partition(devices, selectors::rates_only());
  const AnonymityReport rep = report(parts, parts.total_devices());

  REQUIRE(rep.histogram.size() == parts.sets.size());
  for (std::size_t i = 0; i < parts.sets.size(); ++i) {
    CHECK(rep.histogram[i].first == parts.sets[i].request_count);
    CHECK(rep.histogram[i].second == parts.sets[i].device_count);
  }
  CHECK(rep.largest_set_devices == parts.sets.front().device_count);
}

TEST_CASE("set ordering is deterministic: device count desc, key bytes asc") {
  std::vector<ProbeRequestRecord> requests;
  requests.push_back(request_from(nth_uaa(1), 100, rates_ies({0x04})));
  requests.push_back(request_from(nth_uaa(2), 200, rates_ies({0x02})));
  const auto devices = aggregate_devices(requests, true, selectors::rates_only());
  const AnonymityPartition parts = partition(devices, selectors::rates_only());
  REQUIRE(parts.sets.size() == 2);
  // Tie on device_count: key 01 00 01 02 sorts before 01 00 01 04.
  CHECK(parts.sets[0].key < parts.sets[1].key);
}

TEST_CASE("prescribed 60/25/10/5 distribution is recovered exactly") {
  const auto requests = corpus_with_distribution({
      {{0x02, 0x04, 0x0b, 0x16}, 60},
      {{0x02, 0x04}, 25},
      {{0x0c, 0x12, 0x18, 0x24}, 10},
      {{0x30, 0x48, 0x60, 0x6c}, 5},
  });
  const auto devices = aggregate_devices(requests, true, selectors::rates_only());
  CHECK(devices.size() == 100);
  const AnonymityPartition parts = partition(devices, selectors::rates_only());
  REQUIRE(parts.sets.size() == 4);
  CHECK(parts.sets[0].device_count == 60);
  CHECK(parts.sets[1].device_count == 25);
  CHECK(parts.sets[2].device_count == 10);
  CHECK(parts.sets[3].device_count == 5);

  const AnonymityReport rep = report(parts, 100);
  CHECK(rep.largest_fraction == doctest::Approx(0.60));
}

TEST_CASE("fingerprint grouping agrees with brute-force raw-byte grouping") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto requests = random_corpus(seed);
    const auto traffic = aggregate_traffic(requests, true);
    const auto devices = device_keys(traffic, selectors::rates_ds_ht(), DeviceKeyPolicy::Mode);
    const AnonymityPartition parts = partition(devices, selectors::rates_ds_ht());

    std::multiset<std::uint64_t> fingerprint_sizes;
    for (const auto& set : parts.sets) fingerprint_sizes.insert(set.device_count);

    CHECK(fingerprint_sizes == brute_force_set_sizes(traffic, {1, 3, 45}));
  }
}

TEST_CASE("refinement chain: set counts never shrink, largest never grows") {
  const FieldSelector chain[] = {selectors::rates_only(), selectors::rates_ds(),
                                 selectors::rates_ds_ht(), selectors::full_ie()};
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const auto requests = random_corpus(seed);
    const auto traffic = aggregate_traffic(requests, true);

    std::size_t prev_sets = 0;
    std::uint64_t prev_largest = std::numeric_limits<std::uint64_t>::max();
    for (const FieldSelector& selector : chain) {
      const auto devices = device_keys(traffic, selector, DeviceKeyPolicy::Mode);
      const AnonymityPartition parts = partition(devices, selector);
      const AnonymityReport rep = report(parts, parts.total_devices());
      CHECK(rep.set_count >= prev_sets);
      CHECK(rep.largest_set_devices <= prev_largest);
      prev_sets = rep.set_count;
      prev_largest = rep.largest_set_devices;
    }
  }
}

TEST_CASE("compare_selectors emits one row per selector with the decoded dominant key") {
  const auto requests = corpus_with_distribution({
      {{0x02, 0x04, 0x0b, 0x16}, 6},
      {{0x02, 0x04}, 3},
  });
  const auto traffic = aggregate_traffic(requests, true);
  const std::vector<FieldSelector> sel = {selectors::rates_only(), selectors::rates_ds()};
  const auto rows = compare_selectors(traffic, sel);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].selector == "rates");
  CHECK(rows[0].set_count == 2);
  CHECK(rows[0].largest_devices == 6);
  CHECK(rows[0].total_devices == 9);
  CHECK(rows[0].dominant_decoded == "rates={2,4,11,22}");
  CHECK(rows[1].set_count >= rows[0].set_count);
}

TEST_CASE("per-variant policy splits multi-variant devices across sets") {
  std::vector<ProbeRequestRecord> requests;
  requests.push_back(request_from(nth_uaa(1), 100, rates_ies({0x02})));
  requests.push_back(request_from(nth_uaa(1), 200, rates_ies({0x04})));
  const auto devices =
      aggregate_devices(requests, true, selectors::rates_only(), DeviceKeyPolicy::PerVariant);
  REQUIRE(devices.size() == 2);
  const AnonymityPartition parts = partition(devices, selectors::rates_only());
  CHECK(parts.sets.size() == 2);
  CHECK(parts.total_requests() == 2);
}
