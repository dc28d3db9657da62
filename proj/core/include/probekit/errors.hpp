#pragma once

#include <stdexcept>
#include <string>

namespace probekit {

// Base class for everything the toolkit can throw. File-level faults are
// exceptions; per-frame faults inside a capture are counted, not thrown
// (see ParseStats).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// pcap stream does not start with a known magic number.
struct BadMagic : Error {
  using Error::Error;
};

// pcap stream ends in the middle of a record header or body.
struct TruncatedRecord : Error {
  using Error::Error;
};

// pcap link type is neither raw 802.11 (105) nor radiotap (127).
struct UnsupportedLinkType : Error {
  using Error::Error;
};

struct RadiotapTooShort : Error {
  using Error::Error;
};

// Radiotap header declares a length beyond the captured payload.
struct RadiotapLengthOverrun : Error {
  using Error::Error;
};

// Information element body exceeds the one-byte length field.
struct OversizedElement : Error {
  using Error::Error;
};

struct FrameTooShort : Error {
  using Error::Error;
};

// Probe-crafting spec violates its bounds (empty rates, >8 rates, long SSID).
struct InvalidSpec : Error {
  using Error::Error;
};

struct IoFailure : Error {
  using Error::Error;
};

struct EmptyInput : Error {
  using Error::Error;
};

}  // namespace probekit
