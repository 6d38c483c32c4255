#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mgsim/measure/ptp.hpp"
#include "mgsim/rng.hpp"
#include "mgsim/time.hpp"
#include "mgsim/wire/clock.hpp"
#include "mgsim/wire/link.hpp"

namespace mgsim::measure {

// One timestamped round: both stamps are in the (synchronized) port-clock
// domain, latency = rx_ts - tx_ts.
struct LatencySample {
    SimTime tx_ts;
    SimTime rx_ts;
    std::uint64_t seq = 0;
    SimTime latency() const { return rx_ts - tx_ts; }
};

// Maps a departure instant to the arrival instant at the receiver, or
// nullopt when the packet is lost along the way.
using LatencyPath = std::function<std::optional<SimTime>(SimTime depart)>;

LatencyPath direct_link_path(const wire::LinkModel& link, std::int64_t frame_wire_len);

struct LatencyConfig {
    std::size_t n_samples = 1000;
    double sync_outlier_rate = 0.0;
    bool resync_each_sample = true;
    SimTime sample_spacing = SimTime::ns(20'000);  // budget per round incl. sync
    SimTime frame_serialization;                   // of the timestamped frame
};

struct LatencyRun {
    std::vector<LatencySample> samples;
    std::uint64_t lost_samples = 0;  // events that hit an occupied register
    double median_ns = 0.0;
    double mean_ns = 0.0;
    double min_ns = 0.0;
    double max_ns = 0.0;
};

// Samples latency one packet per round trip: synchronize the clocks, send a
// single timestamp-flagged packet, wait for the register read-back before
// the next. The NIC stamps late in the transmit path and early in the
// receive path, so the measured value is the propagation latency, free of
// the serialization time. Raises Timeout when the path loses the packet.
LatencyRun measure_latency(wire::PortClock& tx_clock, wire::PortClock& rx_clock,
                           const LatencyPath& path, const LatencyConfig& cfg, Rng& rng);

// Two port clocks of one dual-port NIC: same preset, one shared timer phase.
struct LoopbackPair {
    wire::PortClock tx;
    wire::PortClock rx;
};
LoopbackPair make_loopback_pair(wire::ClockPreset preset, std::int64_t line_rate_bps, Rng& rng);

} // namespace mgsim::measure
