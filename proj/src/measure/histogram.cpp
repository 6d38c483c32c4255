#include "mgsim/measure/histogram.hpp"

#include <cmath>
#include <sstream>

#include "mgsim/error.hpp"
#include "mgsim/wire/link.hpp"

namespace mgsim::measure {

Histogram::Histogram(SimTime bin_width, std::optional<SimTime> target)
    : bin_width_(bin_width), target_(target) {
    if (bin_width_.tick_count() <= 0)
        raise(Errc::ConfigInvalid, "bin width must be positive");
}

void Histogram::add(SimTime value) {
    std::int64_t k = value.tick_count() / bin_width_.tick_count();
    if (value.tick_count() < 0 && k * bin_width_.tick_count() != value.tick_count()) --k;
    ++counts_[k];
    ++total_;
}

double Histogram::percent_within(SimTime window) const {
    if (!target_) raise(Errc::NoTarget, "histogram has no target");
    if (total_ == 0) return 0.0;
    const std::int64_t w = bin_width_.tick_count();
    std::uint64_t within = 0;
    for (const auto& [k, n] : counts_) {
        const std::int64_t midpoint = k * w + w / 2;
        if (std::llabs(midpoint - target_->tick_count()) <= window.tick_count())
            within += n;
    }
    return static_cast<double>(within) / static_cast<double>(total_);
}

std::string Histogram::to_csv() const {
    std::ostringstream out;
    out << "bin_start_ns,count\n";
    for (const auto& [k, n] : counts_) {
        const double start_ns = static_cast<double>(k) * bin_width_.to_ns();
        out << start_ns << "," << n << "\n";
    }
    return out.str();
}

std::uint64_t record_interarrival(std::span<const SimTime> arrivals, Histogram& hist,
                                  std::int64_t frame_wire_len, std::int64_t rate_bps) {
    if (arrivals.size() < 2) return 0;
    const SimTime back_to_back = wire::serialization_time(frame_wire_len, rate_bps);
    std::uint64_t micro_bursts = 0;
    for (std::size_t i = 1; i < arrivals.size(); ++i) {
        const SimTime delta = arrivals[i] - arrivals[i - 1];
        hist.add(delta);
        if (delta == back_to_back) ++micro_bursts;
    }
    return micro_bursts;
}

} // namespace mgsim::measure
