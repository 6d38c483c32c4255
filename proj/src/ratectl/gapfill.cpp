#include "mgsim/ratectl/gapfill.hpp"

#include "mgsim/wire/link.hpp"

namespace mgsim::ratectl {

double GapPlan::frame_rate_pps() const {
    if (total_wire_bytes <= 0) return 0.0;
    const double duration_s = static_cast<double>(total_wire_bytes) *
                              static_cast<double>(byte_time_ticks) * 1e-13;
    return static_cast<double>(payload_count + filler_count) / duration_s;
}

bool GapPlan::exceeds_short_frame_cap() const {
    return frame_rate_pps() > params.short_frame_rate_cap_pps;
}

GapClass validate_gap(double gap_bytes, const GapFillParams& params) {
    if (gap_bytes < 0)
        raise(Errc::ConfigInvalid, "negative gap");
    if (gap_bytes == 0)
        return GapClass::BackToBack;
    if (gap_bytes < static_cast<double>(params.min_filler_wire))
        return GapClass::Approximated;
    return GapClass::Exact;
}

GapFillEncoder::GapFillEncoder(std::int64_t payload_wire_len, std::int64_t rate_bps,
                               const GapFillParams& params)
    : params_(params), payload_wire_len_(payload_wire_len) {
    if (params_.min_filler_wire < params_.abs_min_wire)
        raise(Errc::ConfigInvalid, "min filler below the 33-byte hardware floor");
    byte_ticks_ = wire::byte_ticks(rate_bps);
    payload_ticks_ = payload_wire_len * byte_ticks_;
}

GapPlan gapfill_encode(std::span<const SimTime> deltas, std::int64_t payload_wire_len,
                       std::int64_t rate_bps, const GapFillParams& params) {
    GapFillEncoder enc(payload_wire_len, rate_bps, params);
    GapPlan plan;
    plan.params = params;
    plan.byte_time_ticks = enc.byte_time_ticks();
    plan.payload_wire_len = payload_wire_len;
    plan.entries.reserve(deltas.size() * 2);
    for (SimTime d : deltas) {
        enc.encode(d, [&](GapEntry e) {
            plan.entries.push_back(e);
            plan.total_wire_bytes += e.wire_len;
            if (e.kind == GapEntry::Kind::Payload)
                ++plan.payload_count;
            else
                ++plan.filler_count;
        });
        plan.total_requested += d;
    }
    plan.deficit = enc.deficit();
    return plan;
}

} // namespace mgsim::ratectl
