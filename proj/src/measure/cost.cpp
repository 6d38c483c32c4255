#include "mgsim/measure/cost.hpp"

#include <cmath>

#include "mgsim/error.hpp"

namespace mgsim::measure {

CostModel::CostModel() {
    table_ = {
        {"transmission", {76.0, 0.8}},
        {"modification", {9.1, 1.2}},
        {"modification-two-cachelines", {15.0, 1.3}},
        {"ip-offload", {15.2, 1.2}},
        {"udp-offload", {33.1, 3.5}},
        {"tcp-offload", {34.0, 3.3}},
        {"random-fields-1", {32.3, 0.5}},
        {"random-fields-2", {39.8, 1.0}},
        {"random-fields-4", {66.0, 0.9}},
        {"random-fields-8", {133.5, 0.7}},
        {"counter-fields-1", {27.1, 1.4}},
        {"counter-fields-2", {33.1, 1.3}},
        {"counter-fields-4", {38.1, 2.0}},
        {"counter-fields-8", {41.7, 1.2}},
        // Writing one constant field and sending: transmission + modification.
        {"constant-write-baseline", {85.1, 1.44}},
        // Full randomized-flows generator: IO, modification, 8 random header
        // fields, and IP checksum offloading measured together.
        {"udp-random-flows", {229.2, 3.9}},
    };
}

Cycles CostModel::lookup(std::string_view op) const {
    for (const auto& [name, c] : table_)
        if (name == op) return c;
    raise(Errc::UnknownOperation, std::string(op));
}

bool CostModel::has(std::string_view op) const {
    for (const auto& [name, c] : table_)
        if (name == op) return true;
    return false;
}

Cycles CostModel::estimate_cycles(std::span<const std::string> ops) const {
    Cycles total;
    double var = 0.0;
    for (const auto& op : ops) {
        const Cycles c = lookup(op);
        total.mean += c.mean;
        var += c.sigma * c.sigma;
    }
    total.sigma = std::sqrt(var);
    return total;
}

ThroughputInterval predict_throughput(Cycles cycles, double freq_hz) {
    if (cycles.mean <= 0) raise(Errc::ConfigInvalid, "cycle cost must be positive");
    ThroughputInterval t;
    t.mean_mpps = freq_hz / cycles.mean / 1e6;
    t.lo_mpps = freq_hz / (cycles.mean + cycles.sigma) / 1e6;
    t.hi_mpps = cycles.sigma < cycles.mean
                    ? freq_hz / (cycles.mean - cycles.sigma) / 1e6
                    : t.mean_mpps;
    return t;
}

} // namespace mgsim::measure
