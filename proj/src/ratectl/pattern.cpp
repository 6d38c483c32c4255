#include "mgsim/ratectl/pattern.hpp"

#include <fstream>

#include "mgsim/error.hpp"

namespace mgsim::ratectl {

PatternSource PatternSource::cbr(double rate_pps) {
    if (rate_pps <= 0) raise(Errc::ConfigInvalid, "cbr rate must be positive");
    PatternSource p;
    p.kind_ = Kind::Cbr;
    p.rate_pps_ = rate_pps;
    p.period_ = SimTime::from_ns(1e9 / rate_pps);
    return p;
}

PatternSource PatternSource::poisson(double rate_pps) {
    if (rate_pps <= 0) raise(Errc::ConfigInvalid, "poisson rate must be positive");
    PatternSource p;
    p.kind_ = Kind::Poisson;
    p.rate_pps_ = rate_pps;
    p.period_ = SimTime::from_ns(1e9 / rate_pps);
    return p;
}

PatternSource PatternSource::bursts(std::uint32_t burst_len, SimTime intra_gap,
                                    SimTime inter_burst) {
    if (burst_len < 1) raise(Errc::ConfigInvalid, "burst_len must be >= 1");
    PatternSource p;
    p.kind_ = Kind::Bursts;
    p.burst_len_ = burst_len;
    p.intra_gap_ = intra_gap;
    p.inter_burst_ = inter_burst;
    const double mean_ns =
        (static_cast<double>(burst_len - 1) * intra_gap.to_ns() + inter_burst.to_ns()) /
        static_cast<double>(burst_len);
    p.rate_pps_ = mean_ns > 0 ? 1e9 / mean_ns : 0.0;
    return p;
}

PatternSource PatternSource::custom(std::vector<SimTime> deltas) {
    PatternSource p;
    p.kind_ = Kind::Custom;
    double total = 0;
    for (SimTime d : deltas) total += d.to_ns();
    if (!deltas.empty() && total > 0)
        p.rate_pps_ = 1e9 * static_cast<double>(deltas.size()) / total;
    p.seq_ = std::move(deltas);
    return p;
}

SimTime PatternSource::next_interdeparture(Rng& rng) {
    switch (kind_) {
    case Kind::Cbr:
        return period_;
    case Kind::Poisson:
        return SimTime::from_ns(rng.exponential(period_.to_ns()));
    case Kind::Bursts: {
        const bool inter = (burst_pos_ == burst_len_ - 1);
        burst_pos_ = (burst_pos_ + 1) % burst_len_;
        return inter ? inter_burst_ : intra_gap_;
    }
    case Kind::Custom:
        if (seq_pos_ >= seq_.size())
            raise(Errc::Exhausted, "custom pattern consumed after " +
                                       std::to_string(seq_.size()) + " entries");
        return seq_[seq_pos_++];
    }
    raise(Errc::ConfigInvalid, "bad pattern kind");
}

std::vector<SimTime> load_custom_pattern_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::IoFailure, "cannot open " + path);
    std::vector<SimTime> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        try {
            out.push_back(SimTime::from_ns(std::stod(line)));
        } catch (const std::exception&) {
            raise(Errc::ConfigInvalid, path + ": bad inter-departure value '" + line + "'");
        }
    }
    return out;
}

} // namespace mgsim::ratectl
