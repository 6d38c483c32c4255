#include "mgsim/ratectl/hwcbr.hpp"

#include <cmath>

#include "mgsim/error.hpp"
#include "mgsim/wire/link.hpp"

namespace mgsim::ratectl {

HwCbrSchedule hw_cbr_schedule(const HwCbrModel& model, std::size_t n,
                              std::int64_t frame_wire_len, std::int64_t rate_bps, Rng& rng) {
    if (n < 1) raise(Errc::ConfigInvalid, "need at least one frame");
    if (model.target_rate_pps <= 0) raise(Errc::ConfigInvalid, "target rate must be positive");

    const double line_pps = static_cast<double>(rate_bps) /
                            (8.0 * static_cast<double>(frame_wire_len));
    if (model.target_rate_pps > line_pps)
        raise(Errc::RateAboveLineRate, std::to_string(model.target_rate_pps) + " pps > " +
                                           std::to_string(line_pps) + " pps line rate");

    const SimTime ser = serialization_time(frame_wire_len, rate_bps);
    const double period_ticks = 1e9 * SimTime::kTicksPerNs / model.target_rate_pps;
    const auto amp = static_cast<std::uint64_t>(model.oscillation_amplitude.tick_count());

    HwCbrSchedule out;
    out.non_linear_regime = model.target_rate_pps > model.degrade_threshold_pps;
    out.departures.reserve(n);

    SimTime prev;
    for (std::size_t i = 0; i < n; ++i) {
        const auto slot = static_cast<std::int64_t>(
            std::llround(static_cast<double>(i) * period_ticks));
        const std::int64_t jitter =
            amp ? static_cast<std::int64_t>(rng.uniform_u64(0, amp)) : 0;
        SimTime t = SimTime::ticks(slot + jitter);
        // Never overlap the previous frame on the wire; only reachable when
        // the amplitude is of the order of the period.
        if (i > 0 && t < prev + ser) t = prev + ser;
        out.departures.push_back(t);
        prev = t;
    }
    return out;
}

} // namespace mgsim::ratectl
