#include "mgsim/ratectl/realize.hpp"

#include <unordered_map>

#include "mgsim/kernels/crc32.hpp"

namespace mgsim::ratectl {

std::vector<std::uint8_t> make_filler_octets(std::uint32_t wire_len) {
    // wire_len covers preamble/SFD/IFG (20) plus frame bytes incl. 4-byte FCS
    const std::size_t content = wire_len - wire::kWireOverheadBytes - 4;
    std::vector<std::uint8_t> octets(content, 0);
    const std::uint32_t fcs = ~kernels::crc32(octets);
    octets.push_back(static_cast<std::uint8_t>(fcs));
    octets.push_back(static_cast<std::uint8_t>(fcs >> 8));
    octets.push_back(static_cast<std::uint8_t>(fcs >> 16));
    octets.push_back(static_cast<std::uint8_t>(fcs >> 24));
    return octets;
}

SimTime realize_gap_plan(const GapPlan& plan, SimTime start,
                         const std::function<wire::TimedFrame()>& next_payload,
                         wire::Transmitter& tx) {
    if (plan.exceeds_short_frame_cap())
        raise(Errc::FillerRateTooHigh,
              std::to_string(plan.frame_rate_pps() / 1e6) + " Mpps above the " +
                  std::to_string(plan.params.short_frame_rate_cap_pps / 1e6) +
                  " Mpps short-frame limit");

    // Fillers of equal length are identical frames; build each length once.
    std::unordered_map<std::uint32_t, std::vector<std::uint8_t>> filler_cache;

    SimTime cursor = start;
    for (const GapEntry& e : plan.entries) {
        const SimTime ser = SimTime::ticks(static_cast<std::int64_t>(e.wire_len) *
                                           plan.byte_time_ticks);
        if (e.kind == GapEntry::Kind::Payload) {
            wire::TimedFrame f = next_payload();
            f.departure = cursor;
            tx.push(std::move(f));
        } else {
            auto it = filler_cache.find(e.wire_len);
            if (it == filler_cache.end())
                it = filler_cache.emplace(e.wire_len, make_filler_octets(e.wire_len)).first;
            wire::TimedFrame f;
            f.departure = cursor;
            f.octets = it->second;
            f.bad_fcs = true;
            tx.push(std::move(f));
        }
        cursor += ser;
    }
    return cursor;
}

} // namespace mgsim::ratectl
