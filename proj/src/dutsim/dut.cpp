#include "mgsim/dutsim/dut.hpp"

#include <algorithm>
#include <cmath>

#include "mgsim/error.hpp"

namespace mgsim::dutsim {

DutQueue::DutQueue(const DutModel& model) : model_(model) {
    if (model.service_rate_pps <= 0)
        raise(Errc::ConfigInvalid, "service rate must be positive");
    if (model.buffer_pkts < 1)
        raise(Errc::ConfigInvalid, "buffer must hold at least one packet");
    service_ = SimTime::from_ns(1e9 / model.service_rate_pps);
}

void DutQueue::arrive(SimTime t, const DepartSink& on_depart) {
    // Retire everything serviced by now.
    while (!departures_.empty() && departures_.front() <= t)
        departures_.pop_front();

    const bool idle = departures_.empty();
    if (idle) {
        if (!any_interrupt_ || t - last_interrupt_ >= model_.interrupt_throttle) {
            ++stats_.interrupts;
            last_interrupt_ = t;
            any_interrupt_ = true;
        }
    }

    // Waiting room excludes the packet in service.
    std::size_t waiting = departures_.size();
    if (!departures_.empty() && departures_.front() - service_ <= t)
        --waiting;
    if (waiting >= model_.buffer_pkts) {
        ++stats_.dropped;
        return;
    }

    const SimTime start = idle ? t : std::max(t, last_departure_);
    const SimTime depart = start + service_;
    departures_.push_back(depart);
    last_departure_ = depart;
    ++stats_.forwarded;
    if (on_depart) on_depart(t, depart);
}

std::vector<SimTime> forward(std::span<const SimTime> arrivals, const DutModel& model,
                             DutStats& stats) {
    DutQueue q(model);
    std::vector<SimTime> residences;
    residences.reserve(arrivals.size());
    for (SimTime t : arrivals)
        q.arrive(t, [&](SimTime a, SimTime d) { residences.push_back(d - a); });
    stats = q.stats();
    return residences;
}

std::vector<SimTime> latency_percentiles(std::span<const SimTime> residences,
                                         std::span<const double> ps) {
    if (residences.empty())
        raise(Errc::EmptySample, "no latency samples");
    std::vector<SimTime> sorted(residences.begin(), residences.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<SimTime> out;
    out.reserve(ps.size());
    for (double p : ps) {
        const auto n = static_cast<double>(sorted.size());
        auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
        if (rank > 0) --rank;
        if (rank >= sorted.size()) rank = sorted.size() - 1;
        out.push_back(sorted[rank]);
    }
    return out;
}

} // namespace mgsim::dutsim
