#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mgsim/rng.hpp"
#include "mgsim/time.hpp"

namespace mgsim::ratectl {

// Inter-departure pattern source. CBR yields the constant 1/rate, Poisson an
// exponential with mean 1/rate, Bursts alternates burst_len-1 intra gaps with
// one inter-burst gap, Custom replays an explicit sequence.
class PatternSource {
public:
    static PatternSource cbr(double rate_pps);
    static PatternSource poisson(double rate_pps);
    static PatternSource bursts(std::uint32_t burst_len, SimTime intra_gap, SimTime inter_burst);
    static PatternSource custom(std::vector<SimTime> deltas);

    // Next inter-departure time; throws Exhausted when a Custom sequence is
    // consumed.
    SimTime next_interdeparture(Rng& rng);

    enum class Kind { Cbr, Poisson, Bursts, Custom };
    Kind kind() const { return kind_; }
    double rate_pps() const { return rate_pps_; }

private:
    Kind kind_ = Kind::Cbr;
    double rate_pps_ = 0.0;
    SimTime period_;          // CBR period / Poisson mean
    std::uint32_t burst_len_ = 0;
    SimTime intra_gap_;
    SimTime inter_burst_;
    std::uint32_t burst_pos_ = 0;
    std::vector<SimTime> seq_;
    std::size_t seq_pos_ = 0;
};

// One-column CSV of inter-departure nanoseconds.
std::vector<SimTime> load_custom_pattern_csv(const std::string& path);

} // namespace mgsim::ratectl
