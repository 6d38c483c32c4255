#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "mgsim/time.hpp"

namespace mgsim::measure {

// Fixed-width binned distribution; bins are [k*w, (k+1)*w) on the tick grid.
// The default 64 ns width matches the inter-arrival precision of the GbE
// timestamping chip used for such measurements.
class Histogram {
public:
    explicit Histogram(SimTime bin_width = SimTime::ns(64),
                       std::optional<SimTime> target = std::nullopt);

    void add(SimTime value);

    std::uint64_t total() const { return total_; }
    const std::map<std::int64_t, std::uint64_t>& bins() const { return counts_; }
    SimTime bin_width() const { return bin_width_; }
    std::optional<SimTime> target() const { return target_; }
    void set_target(SimTime t) { target_ = t; }

    // Fraction of samples within +-window of the target; a bin counts as
    // within when its midpoint is. Throws NoTarget when no target is set.
    double percent_within(SimTime window) const;

    // "bin_start_ns,count" lines, bins in ascending order.
    std::string to_csv() const;

private:
    SimTime bin_width_;
    std::optional<SimTime> target_;
    std::map<std::int64_t, std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

// Bins successive inter-arrival deltas of an ordered event-time sequence and
// counts micro-bursts: deltas exactly equal to the frame's serialization
// time, i.e. frames that arrived back-to-back. Returns the micro-burst count.
std::uint64_t record_interarrival(std::span<const SimTime> arrivals, Histogram& hist,
                                  std::int64_t frame_wire_len, std::int64_t rate_bps);

} // namespace mgsim::measure
