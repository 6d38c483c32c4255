#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mgsim/time.hpp"

namespace mgsim::measure {

// Throughput counter with per-interval snapshots. update() feeds packet/byte
// totals in event-time order; finalize() reports mean and standard deviation
// of the per-interval packet and byte rates.
class StatsCounter {
public:
    enum class Kind { ManualTx, PktRx };

    explicit StatsCounter(Kind kind = Kind::PktRx, SimTime interval = SimTime::ns(1'000'000'000));

    void update(SimTime at, std::uint64_t packets, std::uint64_t bytes);

    struct Summary {
        std::uint64_t packets = 0;
        std::uint64_t bytes = 0;
        double mean_mpps = 0.0;
        double stddev_mpps = 0.0;
        double mean_mbit = 0.0;
        double stddev_mbit = 0.0;
        std::uint64_t intervals = 0;
    };
    Summary finalize();

    std::uint64_t packets() const { return packets_; }
    std::uint64_t bytes() const { return bytes_; }
    Kind kind() const { return kind_; }

    struct IntervalRow {
        double end_s;
        std::uint64_t packets;
        std::uint64_t bytes;
        double mpps;
        double mbit;
    };
    const std::vector<IntervalRow>& rows() const { return rows_; }

    // "interval_end_s,packets,bytes,mpps,mbit" lines.
    std::string to_csv() const;
    // Human-readable summary, one line per interval plus a footer.
    std::string to_plain(const std::string& label) const;

private:
    void roll_to(SimTime at);
    void flush_partial();

    Kind kind_;
    SimTime interval_;
    SimTime interval_end_;
    SimTime last_update_;
    bool started_ = false;
    std::uint64_t packets_ = 0, bytes_ = 0;
    std::uint64_t interval_packets_ = 0, interval_bytes_ = 0;
    std::vector<IntervalRow> rows_;
};

} // namespace mgsim::measure
