#include "mgsim/wire/transmit.hpp"

#include "mgsim/error.hpp"

namespace mgsim::wire {

Transmitter::Transmitter(const LinkModel& link, PortCounters& peer, EventSink sink)
    : link_(link), peer_(&peer), sink_(std::move(sink)), prop_(propagation_delay(link)) {}

void Transmitter::push(TimedFrame&& frame) {
    const auto wire_len = static_cast<std::int64_t>(frame.octets.size()) + kWireOverheadBytes;
    const SimTime ser = serialization_time(wire_len, link_.line_rate_bps);

    SimTime depart = frame.departure;
    if (link_.aggregate_cap_bps) {
        // MAC ceiling: the device serializes at cap rate internally.
        if (depart < cap_free_at_) depart = cap_free_at_;
        cap_free_at_ = depart + serialization_time(wire_len, *link_.aggregate_cap_bps);
    }
    if (!first_ && depart < busy_until_)
        raise(Errc::WireOverlap,
              "frame " + std::to_string(frame.seq) + " departs before the wire is free");
    first_ = false;
    busy_until_ = depart + ser;

    if (frame.bad_fcs) {
        ++peer_->crc_errors;
        WireEvent ev;
        ev.kind = WireEvent::Kind::DroppedBadCrc;
        ev.arrival = depart + ser + prop_;
        ev.seq = frame.seq;
        ev.wire_len = static_cast<std::uint32_t>(wire_len);
        ev.octets = std::move(frame.octets);
        sink_(std::move(ev));
        return;
    }
    ++peer_->delivered;
    WireEvent ev;
    ev.kind = WireEvent::Kind::Delivered;
    // First bit at the peer: departure + full serialization + propagation
    // (the frame exists at the receiver once serialized onto the wire).
    ev.arrival = depart + ser + prop_;
    ev.seq = frame.seq;
    ev.wire_len = static_cast<std::uint32_t>(wire_len);
    ev.octets = std::move(frame.octets);
    ev.request_timestamp = frame.request_timestamp;
    sink_(std::move(ev));
}

void transmit_frames(const LinkModel& link, std::span<TimedFrame> frames,
                     PortCounters& peer, const EventSink& sink) {
    Transmitter tx(link, peer, sink);
    for (TimedFrame& f : frames)
        tx.push(std::move(f));
}

} // namespace mgsim::wire
