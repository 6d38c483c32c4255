#include "mgsim/measure/stats.hpp"

#include <cmath>
#include <sstream>

namespace mgsim::measure {

StatsCounter::StatsCounter(Kind kind, SimTime interval)
    : kind_(kind), interval_(interval) {}

void StatsCounter::roll_to(SimTime at) {
    if (!started_) {
        interval_end_ = interval_;
        started_ = true;
    }
    while (at >= interval_end_) {
        const double secs = interval_.to_sec();
        rows_.push_back({interval_end_.to_sec(), interval_packets_, interval_bytes_,
                         static_cast<double>(interval_packets_) / secs / 1e6,
                         static_cast<double>(interval_bytes_) * 8.0 / secs / 1e6});
        interval_packets_ = 0;
        interval_bytes_ = 0;
        interval_end_ += interval_;
    }
}

void StatsCounter::update(SimTime at, std::uint64_t packets, std::uint64_t bytes) {
    roll_to(at);
    last_update_ = at;
    packets_ += packets;
    bytes_ += bytes;
    interval_packets_ += packets;
    interval_bytes_ += bytes;
}

void StatsCounter::flush_partial() {
    if (interval_packets_ == 0 && interval_bytes_ == 0) return;
    const double span = (last_update_ - (interval_end_ - interval_)).to_sec();
    if (span <= 0) return;
    rows_.push_back({last_update_.to_sec(), interval_packets_, interval_bytes_,
                     static_cast<double>(interval_packets_) / span / 1e6,
                     static_cast<double>(interval_bytes_) * 8.0 / span / 1e6});
    interval_packets_ = 0;
    interval_bytes_ = 0;
}

StatsCounter::Summary StatsCounter::finalize() {
    flush_partial();
    Summary s;
    s.packets = packets_;
    s.bytes = bytes_;
    s.intervals = rows_.size();
    if (!rows_.empty()) {
        double sum_p = 0, sum_b = 0;
        for (const auto& r : rows_) { sum_p += r.mpps; sum_b += r.mbit; }
        s.mean_mpps = sum_p / static_cast<double>(rows_.size());
        s.mean_mbit = sum_b / static_cast<double>(rows_.size());
        double var_p = 0, var_b = 0;
        for (const auto& r : rows_) {
            var_p += (r.mpps - s.mean_mpps) * (r.mpps - s.mean_mpps);
            var_b += (r.mbit - s.mean_mbit) * (r.mbit - s.mean_mbit);
        }
        s.stddev_mpps = std::sqrt(var_p / static_cast<double>(rows_.size()));
        s.stddev_mbit = std::sqrt(var_b / static_cast<double>(rows_.size()));
    }
    return s;
}

std::string StatsCounter::to_csv() const {
    std::ostringstream out;
    out << "interval_end_s,packets,bytes,mpps,mbit\n";
    for (const auto& r : rows_)
        out << r.end_s << "," << r.packets << "," << r.bytes << "," << r.mpps << ","
            << r.mbit << "\n";
    return out.str();
}

std::string StatsCounter::to_plain(const std::string& label) const {
    std::ostringstream out;
    for (const auto& r : rows_)
        out << "[" << label << "] " << r.end_s << "s: " << r.packets << " packets, "
            << r.mpps << " Mpps, " << r.mbit << " MBit/s\n";
    out << "[" << label << "] total: " << packets_ << " packets, " << bytes_ << " bytes\n";
    return out.str();
}

} // namespace mgsim::measure
