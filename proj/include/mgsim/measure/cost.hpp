#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mgsim::measure {

// Cycles-per-packet figure with a one-sigma uncertainty.
struct Cycles {
    double mean = 0.0;
    double sigma = 0.0;
};

// Calibrated per-packet cycle costs of generator building blocks on a 10 GbE
// transmit path. Costs compose additively; uncertainties add in quadrature.
class CostModel {
public:
    CostModel();  // preloaded with the calibrated table

    Cycles lookup(std::string_view op) const;  // throws UnknownOperation
    bool has(std::string_view op) const;

    // mean = sum of means, sigma = sqrt(sum of sigma^2).
    Cycles estimate_cycles(std::span<const std::string> ops) const;

    const std::vector<std::pair<std::string, Cycles>>& table() const { return table_; }

private:
    std::vector<std::pair<std::string, Cycles>> table_;
};

struct ThroughputInterval {
    double mean_mpps = 0.0;
    double lo_mpps = 0.0;   // freq / (mean + sigma)
    double hi_mpps = 0.0;   // freq / (mean - sigma)
};

ThroughputInterval predict_throughput(Cycles cycles, double freq_hz);

} // namespace mgsim::measure
