#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mgsim/packet/buffer.hpp"

namespace mgsim::packet {

// Template for pre-filled packet buffers: a protocol stack, a frame length
// (FCS excluded), and per-field default values.
struct PacketTemplate {
    std::vector<Proto> protocol_stack;
    std::size_t pkt_length = 60;
    // (field name, value) pairs; values as text ("192.168.1.1", "42", ...).
    std::vector<std::pair<std::string, std::string>> defaults;
};

// Builds the prototype buffer: structural fields (ethertype chain, version,
// protocol numbers, length fields, TTL) are derived from the stack, the given
// defaults are applied on top, everything else is zero. Checksum fields stay
// zero; they are computed at materialize time when offloading is requested.
PacketBuffer make_template(const PacketTemplate& spec);

} // namespace mgsim::packet
