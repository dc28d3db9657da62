#!/usr/bin/env python3
"""Independent pcap/802.11 dissector used to cross-check crafted output.

This decoder shares no code with the C++ implementation: it re-derives the
classic-pcap and 802.11 management layouts from the published specifications
(pcap global/record headers; 24-byte management header; TLV elements), so it
can serve as a second opinion on byte-exactness. Run it against any file the
toolkit wrote:

    python3 scripts/independent_dissect.py out.pcap
"""

import struct
import sys

LINK_IEEE80211 = 105
LINK_RADIOTAP = 127

TAG_NAMES = {
    0: "SSID",
    1: "Supported Rates",
    3: "DS Parameter Set",
    45: "HT Capabilities",
    50: "Extended Supported Rates",
    107: "Interworking",
    127: "Extended Capabilities",
    191: "VHT Capabilities",
    221: "Vendor Specific",
    255: "Element Extension",
}

SUBTYPES = {0x40: "probe request", 0x50: "probe response", 0x80: "beacon",
            0xB0: "authentication", 0x00: "association request"}


def fail(message: str) -> None:
    print(f"DISSECT FAIL: {message}")
    sys.exit(1)


def dissect_frame(frame: bytes, index: int) -> None:
    if len(frame) < 24:
        fail(f"frame {index}: shorter than the 24-byte management header")
    fc0, fc1, duration = struct.unpack_from("<BBH", frame, 0)
    da = frame[4:10]
    sa = frame[10:16]
    bssid = frame[16:22]
    (seq_ctrl,) = struct.unpack_from("<H", frame, 22)

    kind = SUBTYPES.get(fc0, f"fc0=0x{fc0:02x}")
    mac = lambda b: ":".join(f"{x:02x}" for x in b)  # noqa: E731
    print(f"  frame {index}: {kind}, duration={duration}, "
          f"da={mac(da)}, sa={mac(sa)}, bssid={mac(bssid)}, "
          f"seq={seq_ctrl >> 4}, frag={seq_ctrl & 0xF}")

    if fc0 != 0x40:
        return
    # Probe request: the body is a plain run of TLV elements.
    pos = 24
    while pos < len(frame):
        if pos + 2 > len(frame):
            fail(f"frame {index}: dangling element header at offset {pos}")
        tag, length = frame[pos], frame[pos + 1]
        if pos + 2 + length > len(frame):
            fail(f"frame {index}: element at offset {pos} overruns the frame")
        body = frame[pos + 2:pos + 2 + length]
        name = TAG_NAMES.get(tag, f"tag {tag}")
        if tag == 0:
            rendered = body.decode("utf-8", "replace") if body else "<broadcast>"
        elif tag == 1:
            rendered = ", ".join(f"{(b & 0x7F) / 2:g} Mbit/s" + ("(B)" if b & 0x80 else "")
                                 for b in body)
        else:
            rendered = body.hex()
        print(f"    IE {name}: len={length} {rendered}")
        pos += 2 + length


def dissect(path: str) -> None:
    with open(path, "rb") as handle:
        data = handle.read()

    if len(data) < 24:
        fail("missing pcap global header")
    magic = struct.unpack_from("<I", data, 0)[0]
    if magic == 0xA1B2C3D4:
        endian, nanos = "<", False
    elif magic == 0xA1B23C4D:
        endian, nanos = "<", True
    elif magic == 0xD4C3B2A1:
        endian, nanos = ">", False
    elif magic == 0x4D3CB2A1:
        endian, nanos = ">", True
    else:
        fail(f"unknown magic 0x{magic:08x}")
    version_major, version_minor, _, _, snaplen, network = struct.unpack_from(
        endian + "HHiIII", data, 4)
    print(f"pcap v{version_major}.{version_minor} link_type={network} "
          f"snaplen={snaplen} {'ns' if nanos else 'us'} timestamps")
    if network not in (LINK_IEEE80211, LINK_RADIOTAP):
        fail(f"unexpected link type {network}")

    pos = 24
    index = 0
    while pos < len(data):
        if pos + 16 > len(data):
            fail("truncated record header")
        sec, frac, incl, orig = struct.unpack_from(endian + "IIII", data, pos)
        pos += 16
        if pos + incl > len(data):
            fail("truncated record body")
        payload = data[pos:pos + incl]
        pos += incl
        ts = sec + frac / (1e9 if nanos else 1e6)
        print(f"record {index}: t={ts:.6f} captured={incl} original={orig}")
        frame = payload
        if network == LINK_RADIOTAP:
            if len(payload) < 8:
                fail(f"record {index}: radiotap shorter than 8 bytes")
            rt_len = struct.unpack_from("<H", payload, 2)[0]
            if rt_len < 8 or rt_len > len(payload):
                fail(f"record {index}: bad radiotap length {rt_len}")
            print(f"  radiotap header: {rt_len} bytes")
            frame = payload[rt_len:]
        dissect_frame(frame, index)
        index += 1
    print(f"OK: {index} record(s) dissected without errors")


if __name__ == "__main__":
    if len(sys.argv) != 2:
        print(__doc__)
        sys.exit(2)
    dissect(sys.argv[1])
