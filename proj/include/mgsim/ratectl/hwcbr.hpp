#pragma once

#include <cstdint>
#include <vector>

#include "mgsim/rng.hpp"
#include "mgsim/time.hpp"

namespace mgsim::ratectl {

// NIC rate-control model: constant bit rate with bounded oscillation around
// the target inter-departure time. Above degrade_threshold_pps the real
// hardware behaves unpredictably; schedules in that regime are flagged.
struct HwCbrModel {
    double target_rate_pps = 0.0;
    SimTime oscillation_amplitude = SimTime::ns(256);
    double degrade_threshold_pps = 9e6;
};

struct HwCbrSchedule {
    std::vector<SimTime> departures;
    bool non_linear_regime = false;
};

// Departure times for n frames. Each slot i sits at i/rate plus a uniform
// jitter in [0, amplitude], so consecutive inter-departures stay within
// target +- amplitude while the cumulative schedule never drifts off the
// grid (long-run mean rate is exact). Raises RateAboveLineRate when the
// target exceeds line rate for the frame size.
HwCbrSchedule hw_cbr_schedule(const HwCbrModel& model, std::size_t n,
                              std::int64_t frame_wire_len, std::int64_t rate_bps, Rng& rng);

} // namespace mgsim::ratectl
