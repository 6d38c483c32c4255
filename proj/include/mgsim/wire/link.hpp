#pragma once

#include <cstdint>
#include <optional>

#include "mgsim/time.hpp"

namespace mgsim::wire {

// Preamble(7) + SFD(1) + IFG(12): per-frame wire overhead beyond the frame
// bytes themselves (frame length includes the FCS here).
inline constexpr std::int64_t kWireOverheadBytes = 20;

// Speed of light in m/ns.
inline constexpr double kSpeedOfLight = 0.299792458;

inline constexpr std::int64_t kRate1G = 1'000'000'000;
inline constexpr std::int64_t kRate10G = 10'000'000'000;
inline constexpr std::int64_t kRate40G = 40'000'000'000;

// Cable plus line-rate model for one point-to-point segment.
struct LinkModel {
    double length_m = 0.0;
    double vp_fraction = 1.0;          // propagation speed as a fraction of c
    double k_ns = 0.0;                 // (de)modulation time
    std::int64_t line_rate_bps = kRate10G;
    std::optional<std::int64_t> aggregate_cap_bps;  // per-device MAC ceiling
};

// frame_len + preamble + SFD + IFG.
std::int64_t wire_length(std::int64_t frame_len);

// Time to put wire_bytes on a link of the given rate, exact in 0.1 ps ticks
// for the supported rates (0.8 ns per byte at 10 GbE).
SimTime serialization_time(std::int64_t wire_bytes, std::int64_t rate_bps);

// Ticks per byte; exact for the preset rates.
std::int64_t byte_ticks(std::int64_t rate_bps);

// Maximum packets per second for a frame length (FCS included, >= 64).
double line_rate_pps(std::int64_t frame_len, std::int64_t rate_bps);

// k + l / (vp * c).
SimTime propagation_delay(const LinkModel& link);
double propagation_delay_ns(const LinkModel& link);

} // namespace mgsim::wire
