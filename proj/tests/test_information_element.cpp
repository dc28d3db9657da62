#include "doctest.h"

#include "probekit/errors.hpp"
#include "probekit/information_element.hpp"
#include "testutil.hpp"

using namespace probekit;

TEST_CASE("decode_ies walks the two-element example") {
  const std::vector<std::uint8_t> body = {0x00, 0x00, 0x01, 0x04, 0x02, 0x04, 0x0b, 0x16};
  const IeDecodeResult result = decode_ies(body);
  REQUIRE(result.ok());
  REQUIRE(result.elements.size() == 2);
  CHECK(result.elements[0].tag_id == ie_tag::kSsid);
  CHECK(result.elements[0].body.empty());
  CHECK(result.elements[1].tag_id == ie_tag::kSupportedRates);
  CHECK(result.elements[1].body == std::vector<std::uint8_t>{0x02, 0x04, 0x0b, 0x16});
}

TEST_CASE("decode_ies on empty input") {
  CHECK(decode_ies({}).ok());
  CHECK(decode_ies({}).elements.empty());
}

TEST_CASE("decode_ies reports truncation with the byte offset") {
  SUBCASE("declared length overruns") {
    const std::vector<std::uint8_t> body = {0x00, 0x05, 0x41};
    const IeDecodeResult result = decode_ies(body);
    REQUIRE_FALSE(result.ok());
    CHECK(result.elements.empty());
    CHECK(result.error->offset == 0);
    CHECK(result.error->tag_id == 0x00);
    CHECK(result.error->declared_length == 0x05);
  }
  SUBCASE("fault after a good element") {
    const std::vector<std::uint8_t> body = {0x00, 0x01, 0x41, 0xdd, 0x10, 0x00};
    const IeDecodeResult result = decode_ies(body);
    REQUIRE_FALSE(result.ok());
    REQUIRE(result.elements.size() == 1);
    CHECK(result.elements[0].tag_id == 0x00);
    CHECK(result.error->offset == 3);
    CHECK(result.error->tag_id == 0xdd);
  }
  SUBCASE("lone tag byte") {
    const IeDecodeResult result = decode_ies(std::vector<std::uint8_t>{0x2d});
    REQUIRE_FALSE(result.ok());
    CHECK(result.error->offset == 0);
  }
}

TEST_CASE("decode preserves order, duplicates and unknown tags") {
  // Two vendor elements and an unregistered tag id.
  const std::vector<std::uint8_t> body = {0xdd, 0x02, 0xaa, 0xbb, 0x7a, 0x01,
                                          0x99, 0xdd, 0x01, 0xcc};
  const IeDecodeResult result = decode_ies(body);
  REQUIRE(result.ok());
  REQUIRE(result.elements.size() == 3);
  CHECK(result.elements[0].tag_id == 0xdd);
  CHECK(result.elements[1].tag_id == 0x7a);
  CHECK(result.elements[1].body == std::vector<std::uint8_t>{0x99});
  CHECK(result.elements[2].tag_id == 0xdd);
  CHECK(result.elements[2].body == std::vector<std::uint8_t>{0xcc});
  CHECK(tag_name(0x7a) == nullptr);
}

TEST_CASE("TLV walk consumes exactly the input: parsed bytes + error offset") {
  testutil::RecordGenerator gen(7);
  for (int i = 0; i < 500; ++i) {
    const std::vector<std::uint8_t> body = gen.random_bytes(64);
    const IeDecodeResult result = decode_ies(body);
    std::size_t consumed = 0;
    for (const auto& element : result.elements) consumed += 2 + element.body.size();
    if (result.ok()) {
      CHECK(consumed == body.size());
    } else {
      CHECK(consumed == result.error->offset);
      CHECK(result.error->offset <= body.size());
    }
  }
}

TEST_CASE("encode_ies rejects oversized bodies") {
  InformationElement ie;
  ie.tag_id = 0xdd;
  ie.body.resize(256);
  CHECK_THROWS_AS(encode_ies(std::vector<InformationElement>{ie}), OversizedElement);

  ie.body.resize(255);
  CHECK_NOTHROW(encode_ies(std::vector<InformationElement>{ie}));
}

TEST_CASE("extension id is the first body byte of tag 255") {
  InformationElement he{ie_tag::kElementExtension, {0x23, 0x01, 0x02}};
  CHECK(he.extension_id() == 0x23);
  InformationElement empty{ie_tag::kElementExtension, {}};
  CHECK_FALSE(empty.extension_id().has_value());
  InformationElement plain{ie_tag::kSupportedRates, {0x23}};
  CHECK_FALSE(plain.extension_id().has_value());
}

TEST_CASE("supported rates decode to Mbit/s with the basic flag split off") {
  CHECK(SupportedRates::rate_mbps(0x02) == doctest::Approx(1.0));
  CHECK(SupportedRates::rate_mbps(0x04) == doctest::Approx(2.0));
  CHECK(SupportedRates::rate_mbps(0x0b) == doctest::Approx(5.5));
  CHECK(SupportedRates::rate_mbps(0x16) == doctest::Approx(11.0));
  CHECK(SupportedRates::rate_mbps(0x96) == doctest::Approx(11.0));
  CHECK(SupportedRates::is_basic(0x96));
  CHECK_FALSE(SupportedRates::is_basic(0x16));
}

TEST_CASE("tag registry names") {
  CHECK(std::string(tag_name(0)) == "SSID");
  CHECK(std::string(tag_name(1)) == "Supported Rates");
  CHECK(std::string(tag_name(3)) == "DS Parameter Set");
  CHECK(std::string(tag_name(45)) == "HT Capabilities");
  CHECK(std::string(tag_name(50)) == "Extended Supported Rates");
  CHECK(std::string(tag_name(107)) == "Interworking");
  CHECK(std::string(tag_name(127)) == "Extended Capabilities");
  CHECK(std::string(tag_name(191)) == "VHT Capabilities");
  CHECK(std::string(tag_name(221)) == "Vendor Specific");
  CHECK(std::string(tag_name(255)) == "Element Extension");
}
