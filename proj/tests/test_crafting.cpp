#include "doctest.h"

#include "probekit/crafting.hpp"
#include "probekit/errors.hpp"
#include "testutil.hpp"

using namespace probekit;

TEST_CASE("default spec with fixed SA reproduces the golden frame") {
  ProbeSpec spec;
  spec.source = FixedSource{testutil::mac_from("02:11:22:33:44:55")};

  const ProbeRequestRecord probe = build_generic_probe(spec, 0);
  CHECK(probe.frame_length == 32);
  CHECK(encode_probe_request(probe) == testutil::golden_generic_probe());

  const auto records = build_burst(spec);
  REQUIRE(records.size() == 1);
  CHECK(records[0].payload == testutil::golden_generic_probe());
  CHECK(records[0].link_type == kLinkTypeIeee80211);
}

TEST_CASE("directed spec grows the frame by the SSID bytes") {
  ProbeSpec spec;
  spec.source = FixedSource{testutil::mac_from("02:11:22:33:44:55")};
  spec.ssid = "eduroam";

  const ProbeRequestRecord probe = build_generic_probe(spec, 0);
  CHECK(probe.frame_length == 39);
  REQUIRE(probe.ssid().has_value());
  const auto ssid = *probe.ssid();
  CHECK(std::vector<std::uint8_t>(ssid.begin(), ssid.end()) ==
        std::vector<std::uint8_t>{0x65, 0x64, 0x75, 0x72, 0x6f, 0x61, 0x6d});
  CHECK_FALSE(probe.undirected());
}

TEST_CASE("spec bounds are enforced") {
  ProbeSpec spec;
  spec.rates.rates = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  CHECK_THROWS_AS(build_generic_probe(spec, 0), InvalidSpec);

  spec = ProbeSpec{};
  spec.rates.rates.clear();
  CHECK_THROWS_AS(build_generic_probe(spec, 0), InvalidSpec);

  spec = ProbeSpec{};
  spec.ssid = std::string(33, 'x');
  CHECK_THROWS_AS(build_generic_probe(spec, 0), InvalidSpec);

  spec = ProbeSpec{};
  CHECK_THROWS_AS(build_generic_probe(spec, 1), InvalidSpec);  // index >= burst_size

  spec = ProbeSpec{};
  spec.intra_burst_gap_ns = -1;
  CHECK_THROWS_AS(build_burst(spec), InvalidSpec);
}

TEST_CASE("burst timestamps step by the configured gap") {
  ProbeSpec spec;
  spec.burst_size = 3;
  spec.start_time_ns = 1'000'000'000;
  const auto records = build_burst(spec);
  REQUIRE(records.size() == 3);
  CHECK(records[0].timestamp_ns == 1'000'000'000);
  CHECK(records[1].timestamp_ns == 1'020'000'000);
  CHECK(records[2].timestamp_ns == 1'040'000'000);
}

TEST_CASE("randomized source draws one LAA per burst") {
  ProbeSpec spec;
  spec.source = RandomLaaSource{7};
  spec.burst_size = 4;

  const auto records = build_burst(spec);
  std::optional<MacAddress> sa;
  for (const auto& record : records) {
    const auto probe = decode_probe_request(record.payload, record.timestamp_ns);
    REQUIRE(probe.has_value());
    CHECK(probe->header.sa.locally_administered());
    CHECK_FALSE(probe->header.sa.group());
    if (!sa) {
      sa = probe->header.sa;
    } else {
      CHECK(*sa == probe->header.sa);  // single address for the whole burst
    }
  }

  ProbeSpec other = spec;
  other.source = RandomLaaSource{8};
  const auto other_records = build_burst(other);
  const auto other_probe = decode_probe_request(other_records[0].payload, 0);
  CHECK(other_probe->header.sa != *sa);
}

TEST_CASE("crafted output is reproducible byte for byte") {
  ProbeSpec spec;
  spec.source = RandomLaaSource{1234};
  spec.seq_policy = RandomSeq{99};
  spec.burst_size = 5;

  const auto a = build_burst(spec);
  const auto b = build_burst(spec);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].payload == b[i].payload);
    CHECK(a[i].timestamp_ns == b[i].timestamp_ns);
  }
}

TEST_CASE("every crafted frame re-decodes to exactly [SSID, Supported Rates]") {
  ProbeSpec spec;
  spec.source = RandomLaaSource{21};
  spec.seq_policy = RandomSeq{22};
  spec.burst_size = 8;
  spec.ssid = "net";

  for (const auto& record : build_burst(spec)) {
    const auto probe = decode_probe_request(record.payload, record.timestamp_ns);
    REQUIRE(probe.has_value());
    REQUIRE(probe->ies.size() == 2);
    CHECK(probe->ies[0].tag_id == ie_tag::kSsid);
    CHECK(probe->ies[1].tag_id == ie_tag::kSupportedRates);
    CHECK(probe->header.duration == 0);
    CHECK(probe->header.da == MacAddress::broadcast());
    CHECK(probe->header.bssid == MacAddress::broadcast());
  }
}

TEST_CASE("sequential sequence numbers wrap at 12 bits") {
  ProbeSpec spec;
  spec.seq_policy = SequentialSeq{4094};
  spec.burst_size = 4;
  const auto records = build_burst(spec);
  std::vector<std::uint16_t> seqs;
  for (const auto& record : records) {
    seqs.push_back(decode_probe_request(record.payload, 0)->header.sequence_number());
  }
  CHECK(seqs == std::vector<std::uint16_t>{4094, 4095, 0, 1});
}

TEST_CASE("radiotap option prepends the minimal 8-byte header") {
  ProbeSpec spec;
  spec.source = FixedSource{testutil::mac_from("02:11:22:33:44:55")};
  const auto records = build_burst(spec, /*with_radiotap=*/true);
  REQUIRE(records.size() == 1);
  CHECK(records[0].link_type == kLinkTypeRadiotap);
  REQUIRE(records[0].payload.size() == 40);
  const std::vector<std::uint8_t> expected_header = {0, 0, 8, 0, 0, 0, 0, 0};
  CHECK(std::vector<std::uint8_t>(records[0].payload.begin(), records[0].payload.begin() + 8) ==
        expected_header);
  CHECK(std::vector<std::uint8_t>(records[0].payload.begin() + 8, records[0].payload.end()) ==
        testutil::golden_generic_probe());
}

TEST_CASE("undirected frames carry a zero-length SSID element") {
  const auto records = build_burst(ProbeSpec{});
  const auto probe = decode_probe_request(records[0].payload, 0);
  REQUIRE(probe.has_value());
  CHECK(probe->undirected());
  CHECK(probe->ies[0].body.empty());
}
