#include "doctest.h"

#include <sstream>

#include "probekit/crc32.hpp"
#include "probekit/probe_extract.hpp"
#include "probekit/radiotap.hpp"
#include "testutil.hpp"

using namespace probekit;

namespace {

CaptureRecord capture(std::int64_t ts_ns, std::vector<std::uint8_t> frame,
                      std::uint32_t link_type = kLinkTypeIeee80211) {
  CaptureRecord r;
  r.timestamp_ns = ts_ns;
  r.link_type = link_type;
  r.payload = std::move(frame);
  return r;
}

std::vector<std::uint8_t> probe_frame(const MacAddress& sa, std::uint16_t seq = 0) {
  return testutil::raw_frame(0x40, 0, MacAddress::broadcast(), sa, MacAddress::broadcast(),
                             static_cast<std::uint16_t>(seq << 4),
                             {0x00, 0x00, 0x01, 0x04, 0x02, 0x04, 0x0b, 0x16});
}

std::vector<std::uint8_t> beacon_frame(const MacAddress& sa) {
  // Beacons carry a 12-byte fixed part before the elements; content is
  // irrelevant here, only the subtype matters.
  std::vector<std::uint8_t> fixed(12, 0);
  return testutil::raw_frame(0x80, 0, MacAddress::broadcast(), sa, sa, 0, fixed);
}

}  // namespace

TEST_CASE("extract counts kinds and returns only probe requests") {
  const MacAddress sa = testutil::mac_from("00:0c:29:aa:bb:cc");
  std::vector<CaptureRecord> records;
  for (int i = 0; i < 5; ++i) {
    records.push_back(capture(1'000'000'000 + i, probe_frame(sa, static_cast<std::uint16_t>(i))));
  }
  records.push_back(capture(50, beacon_frame(sa)));
  records.push_back(capture(60, beacon_frame(sa)));

  const ExtractResult result = extract_probe_requests(records);
  CHECK(result.stats.total == 7);
  CHECK(result.stats.probe_requests == 5);
  CHECK(result.stats.other == 2);
  CHECK(result.stats.unparseable == 0);
  CHECK(result.probes.size() == 5);
}

TEST_CASE("stats counters always sum to the record total") {
  testutil::RecordGenerator gen(31337);
  std::vector<CaptureRecord> records;
  for (int i = 0; i < 400; ++i) {
    const auto bytes = gen.random_bytes(80);
    records.push_back(capture(i, bytes));
  }
  const ExtractResult result = extract_probe_requests(records);
  CHECK(result.stats.total == records.size());
  CHECK(result.stats.probe_requests + result.stats.probe_responses + result.stats.data_frames +
            result.stats.other + result.stats.unparseable ==
        result.stats.total);
}

TEST_CASE("probes come out sorted by timestamp") {
  const MacAddress sa = testutil::mac_from("00:0c:29:aa:bb:cc");
  std::vector<CaptureRecord> records;
  records.push_back(capture(3'000, probe_frame(sa, 3)));
  records.push_back(capture(1'000, probe_frame(sa, 1)));
  records.push_back(capture(2'000, probe_frame(sa, 2)));

  const ExtractResult result = extract_probe_requests(records);
  REQUIRE(result.probes.size() == 3);
  CHECK(result.probes[0].timestamp_ns == 1'000);
  CHECK(result.probes[1].timestamp_ns == 2'000);
  CHECK(result.probes[2].timestamp_ns == 3'000);
}

TEST_CASE("radiotap flags drive FCS stripping") {
  const MacAddress sa = testutil::mac_from("00:0c:29:aa:bb:cc");
  std::vector<std::uint8_t> frame = probe_frame(sa);
  const std::uint32_t fcs = crc32_ieee(frame);

  std::vector<std::uint8_t> payload = {0x00, 0x00, 0x09, 0x00, 0x02, 0x00, 0x00, 0x00, 0x10};
  payload.insert(payload.end(), frame.begin(), frame.end());
  payload.push_back(static_cast<std::uint8_t>(fcs & 0xff));
  payload.push_back(static_cast<std::uint8_t>((fcs >> 8) & 0xff));
  payload.push_back(static_cast<std::uint8_t>((fcs >> 16) & 0xff));
  payload.push_back(static_cast<std::uint8_t>((fcs >> 24) & 0xff));

  const ExtractResult result =
      extract_probe_requests(std::vector<CaptureRecord>{capture(0, payload, kLinkTypeRadiotap)});
  REQUIRE(result.probes.size() == 1);
  CHECK(result.probes[0].frame_length == frame.size());  // FCS bytes excluded
  CHECK(result.probes[0].fcs_present);
}

TEST_CASE("assume-fcs strips trailing bytes when radiotap gives no flags") {
  const MacAddress sa = testutil::mac_from("00:0c:29:aa:bb:cc");
  std::vector<std::uint8_t> frame = probe_frame(sa);
  frame.insert(frame.end(), {0xde, 0xad, 0xbe, 0xef});

  ExtractOptions options;
  options.assume_fcs = true;
  const ExtractResult result =
      extract_probe_requests(std::vector<CaptureRecord>{capture(0, frame)}, options);
  REQUIRE(result.probes.size() == 1);
  CHECK(result.probes[0].frame_length == frame.size() - 4);

  const ExtractResult without =
      extract_probe_requests(std::vector<CaptureRecord>{capture(0, frame)});
  // Without the option those four bytes read as a truncated trailing element.
  CHECK(without.stats.unparseable == 1);
}

TEST_CASE("nanosecond captures flow through extraction with full precision") {
  const MacAddress sa = testutil::mac_from("00:0c:29:aa:bb:cc");
  const auto frame = probe_frame(sa);

  // nanosecond-magic pcap assembled by hand
  std::string file;
  auto put32 = [&file](std::uint32_t v) {
    file.push_back(static_cast<char>(v & 0xff));
    file.push_back(static_cast<char>((v >> 8) & 0xff));
    file.push_back(static_cast<char>((v >> 16) & 0xff));
    file.push_back(static_cast<char>((v >> 24) & 0xff));
  };
  put32(0xa1b23c4d);
  file += std::string("\x02\x00\x04\x00", 4);
  put32(0);
  put32(0);
  put32(65535);
  put32(105);
  put32(12);         // seconds
  put32(345'678'901); // nanoseconds
  put32(static_cast<std::uint32_t>(frame.size()));
  put32(static_cast<std::uint32_t>(frame.size()));
  file.append(frame.begin(), frame.end());

  std::istringstream in(file);
  const auto records = read_capture(in);
  const ExtractResult result = extract_probe_requests(records);
  REQUIRE(result.probes.size() == 1);
  CHECK(result.probes[0].timestamp_ns == 12'345'678'901);
}

TEST_CASE("malformed frames are counted, not fatal") {
  std::vector<CaptureRecord> records;
  records.push_back(capture(0, {0x40, 0x00, 0x01}));                     // short
  records.push_back(capture(1, {0x00, 0x00, 0x02, 0x00}, kLinkTypeRadiotap));  // bad radiotap
  records.push_back(capture(2, testutil::raw_frame(0x40, 0, MacAddress::broadcast(),
                                                   testutil::mac({0, 1, 2, 3, 4, 5}),
                                                   MacAddress::broadcast(), 0, {0x00, 0x09})));

  const ExtractResult result = extract_probe_requests(records);
  CHECK(result.stats.unparseable == 3);
  CHECK(result.probes.empty());
  CHECK_FALSE(result.stats.diagnostics.empty());
}
