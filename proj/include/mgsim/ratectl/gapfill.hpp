#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mgsim/error.hpp"
#include "mgsim/time.hpp"

namespace mgsim::ratectl {

// Gap-filling rate control: the wire is kept completely full and the time
// between payload frames is realized by transmitting bad-FCS filler frames
// that the receiving NIC drops before queue assignment. Gaps shorter than
// the minimum filler cannot be represented; they are carried in a byte
// deficit and repaid by lengthening later fillers, so the long-run rate is
// exact even where individual gaps are approximated.

struct GapFillParams {
    std::int64_t min_filler_wire = 76;   // smallest filler the NIC will emit
    std::int64_t abs_min_wire = 33;      // hardware floor, never crossed
    std::int64_t max_frame_wire = 1538;  // 1518-byte frame + overhead
    // Short fillers push the frame rate above what the NIC can sustain;
    // plans beyond this cap are refused at realization.
    double short_frame_rate_cap_pps = 15.6e6;
};

struct GapEntry {
    enum class Kind : std::uint8_t { Payload, Filler };
    Kind kind;
    std::uint32_t wire_len;  // bytes on the wire including overhead
};

struct GapPlan {
    std::vector<GapEntry> entries;
    GapFillParams params;
    std::int64_t byte_time_ticks = 0;     // ticks per wire byte at the line rate
    std::int64_t payload_wire_len = 0;
    SimTime deficit;                      // unrepresented gap time still owed
    std::uint64_t payload_count = 0;
    std::uint64_t filler_count = 0;
    std::int64_t total_wire_bytes = 0;
    SimTime total_requested;              // sum of the encoded deltas

    // Total frame rate (payload + fillers) implied by the plan.
    double frame_rate_pps() const;
    bool exceeds_short_frame_cap() const;
};

enum class GapClass { Exact, Approximated, BackToBack };

// 0 -> BackToBack; (0, min_filler) -> Approximated; >= min_filler -> Exact.
GapClass validate_gap(double gap_bytes, const GapFillParams& params = {});

// Encodes inter-departure times into a payload/filler sequence at the given
// line rate. Every delta must be at least the payload's serialization time
// (DeltaTooSmall otherwise). Oversized gaps split into maximum-length fillers;
// remainders and sub-minimum gaps fold into the running deficit.
GapPlan gapfill_encode(std::span<const SimTime> deltas, std::int64_t payload_wire_len,
                       std::int64_t rate_bps, const GapFillParams& params = {});

// Incremental encoder for long runs; produces entries through a callback.
class GapFillEncoder {
public:
    GapFillEncoder(std::int64_t payload_wire_len, std::int64_t rate_bps,
                   const GapFillParams& params = {});

    template <typename Fn>
    void encode(SimTime delta, Fn&& emit);  // emit(GapEntry)

    SimTime deficit() const { return SimTime::ticks(deficit_ticks_); }
    std::int64_t byte_time_ticks() const { return byte_ticks_; }
    const GapFillParams& params() const { return params_; }

private:
    GapFillParams params_;
    std::int64_t payload_wire_len_;
    std::int64_t payload_ticks_;
    std::int64_t byte_ticks_;
    std::int64_t deficit_ticks_ = 0;
};

template <typename Fn>
void GapFillEncoder::encode(SimTime delta, Fn&& emit) {
    if (delta.tick_count() < payload_ticks_)
        throw Error(Errc::DeltaTooSmall,
                    "delta " + std::to_string(delta.to_ns()) + " ns below payload serialization");
    emit(GapEntry{GapEntry::Kind::Payload, static_cast<std::uint32_t>(payload_wire_len_)});

    // Owed gap time: this delta's gap plus whatever earlier deltas could not
    // represent.
    std::int64_t pending = delta.tick_count() - payload_ticks_ + deficit_ticks_;
    std::int64_t gap_bytes = pending / byte_ticks_;
    while (gap_bytes >= params_.min_filler_wire) {
        std::int64_t take = std::min(gap_bytes, params_.max_frame_wire);
        // Avoid leaving a tail below the minimum when an even split exists.
        const std::int64_t rest = gap_bytes - take;
        if (rest > 0 && rest < params_.min_filler_wire &&
            take - (params_.min_filler_wire - rest) >= params_.min_filler_wire)
            take -= params_.min_filler_wire - rest;
        emit(GapEntry{GapEntry::Kind::Filler, static_cast<std::uint32_t>(take)});
        pending -= take * byte_ticks_;
        gap_bytes -= take;
    }
    deficit_ticks_ = pending;  // < min_filler_wire bytes worth of time
}

} // namespace mgsim::ratectl
