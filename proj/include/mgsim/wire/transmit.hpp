#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mgsim/time.hpp"
#include "mgsim/wire/link.hpp"

namespace mgsim::wire {

// A materialized frame (FCS included) scheduled for departure. bad_fcs
// mirrors the producing buffer's crc_valid so the wire does not re-CRC every
// frame; the FCS octets themselves are still wrong for bad frames.
struct TimedFrame {
    SimTime departure;                 // true time the first bit hits the wire
    std::vector<std::uint8_t> octets;  // frame with FCS
    std::uint64_t seq = 0;
    bool bad_fcs = false;
    bool request_timestamp = false;
};

struct WireEvent {
    enum class Kind { Delivered, DroppedBadCrc };
    Kind kind = Kind::Delivered;
    SimTime arrival;                   // first bit at the peer, true time
    std::uint64_t seq = 0;
    std::uint32_t wire_len = 0;        // frame bytes + 20
    std::vector<std::uint8_t> octets;  // moved from the frame
    bool request_timestamp = false;
};

// Receive-side counters maintained by the wire: frames with a bad FCS are
// dropped before any queue assignment and only bump crc_errors.
struct PortCounters {
    std::uint64_t delivered = 0;
    std::uint64_t crc_errors = 0;
};

using EventSink = std::function<void(WireEvent&&)>;

// Streams frames over the link in departure order. Departures must be
// spaced by at least each frame's serialization time, otherwise WireOverlap
// is raised (a rate-control bug upstream). With aggregate_cap_bps set,
// departures are paced so the device never exceeds the cap.
void transmit_frames(const LinkModel& link, std::span<TimedFrame> frames,
                     PortCounters& peer, const EventSink& sink);

// Incremental variant for long runs: call push() in departure order.
class Transmitter {
public:
    Transmitter(const LinkModel& link, PortCounters& peer, EventSink sink);

    void push(TimedFrame&& frame);
    SimTime wire_busy_until() const { return busy_until_; }

private:
    LinkModel link_;
    PortCounters* peer_;
    EventSink sink_;
    SimTime busy_until_;       // end of the previous frame on the wire
    SimTime cap_free_at_;      // MAC-cap pacing
    SimTime prop_;
    bool first_ = true;
};

} // namespace mgsim::wire
