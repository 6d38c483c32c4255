#include "mgsim/wire/link.hpp"

#include "mgsim/error.hpp"

namespace mgsim::wire {

std::int64_t wire_length(std::int64_t frame_len) {
    return frame_len + kWireOverheadBytes;
}

// 1 s = 1e13 ticks; one byte takes 8/rate seconds.
static constexpr std::int64_t kTicksPerSecond = 10'000'000'000'000;

std::int64_t byte_ticks(std::int64_t rate_bps) {
    if (rate_bps <= 0) raise(Errc::ConfigInvalid, "rate must be positive");
    const std::int64_t num = 8 * kTicksPerSecond;
    if (num % rate_bps != 0)
        raise(Errc::ConfigInvalid, "line rate does not divide the tick grid; "
                                   "use 1G/10G/40G presets");
    return num / rate_bps;
}

SimTime serialization_time(std::int64_t wire_bytes, std::int64_t rate_bps) {
    if (rate_bps <= 0) raise(Errc::ConfigInvalid, "rate must be positive");
    const __int128 num = static_cast<__int128>(wire_bytes) * 8 * kTicksPerSecond;
    // round to nearest tick; exact for the preset rates
    const __int128 q = (num + rate_bps / 2) / rate_bps;
    return SimTime::ticks(static_cast<std::int64_t>(q));
}

double line_rate_pps(std::int64_t frame_len, std::int64_t rate_bps) {
    return static_cast<double>(rate_bps) / (8.0 * static_cast<double>(wire_length(frame_len)));
}

double propagation_delay_ns(const LinkModel& link) {
    return link.k_ns + link.length_m / (link.vp_fraction * kSpeedOfLight);
}

SimTime propagation_delay(const LinkModel& link) {
    return SimTime::from_ns(propagation_delay_ns(link));
}

} // namespace mgsim::wire
