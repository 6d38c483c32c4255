#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mgsim/packet/buffer.hpp"

namespace mgsim::packet {

// RFC 1071 header checksum. The header must have even length with its
// checksum field zeroed; returns the complemented folded sum.
// Verification: summing a header that contains its own checksum yields 0xFFFF.
std::uint16_t ipv4_checksum(std::span<const std::uint8_t> header);

// Transport checksum over pseudo header + L4 header + payload. The buffer
// must carry the named layer above IPv4 or IPv6. A UDP result of 0x0000 is
// emitted as 0xFFFF.
std::uint16_t l4_checksum(const PacketBuffer& buffer, Proto proto);

// IEEE 802.3 FCS of the frame bytes.
std::uint32_t crc32_fcs(std::span<const std::uint8_t> frame);

// True when the trailing 4 octets are the correct FCS of the preceding bytes.
bool fcs_ok(std::span<const std::uint8_t> frame_with_fcs);

// Applies offloaded checksums (IPv4 first, then L4) and appends the FCS:
// correct when crc_valid, bitwise complement of the correct value otherwise.
// Result length is frame_len + 4.
std::vector<std::uint8_t> materialize(const PacketBuffer& buffer);

} // namespace mgsim::packet
