#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <span>
#include <vector>

#include "mgsim/time.hpp"

namespace mgsim::dutsim {

// Parametric device under test: a single-server FIFO forwarding queue with
// deterministic service time and an interrupt hold-off timer. Bad-FCS frames
// never reach it; the wire has already dropped them.
struct DutModel {
    double service_rate_pps = 1.9e6;
    std::uint32_t buffer_pkts = 3800;
    SimTime interrupt_throttle;  // min spacing between interrupts; 0 = none

    // Reporting aid: steady-state residence once overloaded.
    SimTime overload_latency() const {
        return SimTime::from_ns(static_cast<double>(buffer_pkts) / service_rate_pps * 1e9);
    }
};

struct DutStats {
    std::uint64_t forwarded = 0;
    std::uint64_t dropped = 0;
    std::uint64_t interrupts = 0;
};

// on_depart(arrival, departure) is called in departure order for every
// forwarded packet.
using DepartSink = std::function<void(SimTime arrival, SimTime departure)>;

class DutQueue {
public:
    explicit DutQueue(const DutModel& model);

    // Feed one arrival; arrivals must be in non-decreasing time order.
    void arrive(SimTime t, const DepartSink& on_depart);

    const DutStats& stats() const { return stats_; }

private:
    DutModel model_;
    SimTime service_;
    std::deque<SimTime> departures_;   // admitted, not yet fully serviced
    SimTime last_departure_;
    SimTime last_interrupt_;
    bool any_interrupt_ = false;
    DutStats stats_;
};

// Convenience wrapper over DutQueue for a complete arrival sequence; returns
// residence times (departure - arrival) of forwarded packets.
std::vector<SimTime> forward(std::span<const SimTime> arrivals, const DutModel& model,
                             DutStats& stats);

// Empirical percentiles (nearest-rank) of a latency sample; ps in [0, 100].
std::vector<SimTime> latency_percentiles(std::span<const SimTime> residences,
                                         std::span<const double> ps);

} // namespace mgsim::dutsim
