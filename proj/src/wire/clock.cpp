#include "mgsim/wire/clock.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mgsim/error.hpp"
#include "mgsim/wire/link.hpp"

namespace mgsim::wire {

SimTime PortClock::effective_offset(SimTime true_time) const {
    const double drift_ticks =
        drift * static_cast<double>((true_time - epoch).tick_count());
    return offset + SimTime::ticks(static_cast<std::int64_t>(std::llround(drift_ticks)));
}

SimTime PortClock::read(SimTime true_time) const {
    SimTime adjusted = true_time + effective_offset(true_time);
    if (timer_step.tick_count() > 0) {
        const std::int64_t step = timer_step.tick_count();
        std::int64_t rel = (adjusted - quant_phase).tick_count();
        std::int64_t q = rel / step;
        if (rel < 0 && q * step != rel) --q;
        adjusted = SimTime::ticks(q * step);
    }
    return adjusted + post_phase;
}

void PortClock::adjust(SimTime at, SimTime delta) {
    offset = effective_offset(at) + delta;
    epoch = at;
}

PortClock make_clock(ClockPreset preset, std::int64_t line_rate_bps, Rng& rng) {
    // Timestamp unit runs at one tenth the frequency on a 1 GbE link.
    const std::int64_t scale = (line_rate_bps <= kRate1G) ? 10 : 1;
    PortClock c;
    switch (preset) {
    case ClockPreset::Ideal:
        return c;
    case ClockPreset::I82599:
        c.granularity = SimTime::from_ns(6.4 * static_cast<double>(scale));
        c.timer_step = SimTime::from_ns(12.8 * static_cast<double>(scale));
        c.phase_per_measurement = true;
        break;
    case ClockPreset::X540:
        c.granularity = SimTime::from_ns(6.4 * static_cast<double>(scale));
        c.timer_step = c.granularity;
        c.block_code_jitter = true;
        break;
    case ClockPreset::I82580:
        c.granularity = SimTime::ns(64);
        c.timer_step = SimTime::ns(64);
        c.post_phase = SimTime::ns(8) * static_cast<std::int64_t>(rng.uniform_u64(0, 7));
        break;
    }
    c.quant_phase = SimTime::ticks(static_cast<std::int64_t>(
        rng.uniform_u64(0, static_cast<std::uint64_t>(c.timer_step.tick_count() - 1))));
    return c;
}

namespace {

// Read spacing: a multiple of every supported timer step (6.4, 12.8, 64 ns),
// so that paired reads of synchronous clocks cancel exactly.
constexpr std::int64_t kReadGapNs = 320;

SimTime corrupted_read(const PortClock& c, SimTime t, double outlier_rate, Rng& rng) {
    SimTime v = c.read(t);
    if (outlier_rate > 0 && rng.chance(outlier_rate)) {
        // uniform in +-10 us
        const std::int64_t span = SimTime::ns(20'000).tick_count();
        const auto err = static_cast<std::int64_t>(
            rng.uniform_u64(0, static_cast<std::uint64_t>(span)));
        v += SimTime::ticks(err - span / 2);
    }
    return v;
}

SimTime median(std::vector<SimTime>& v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return SimTime::ticks((v[n / 2 - 1].tick_count() + v[n / 2].tick_count()) / 2);
}

} // namespace

SyncResult sync_clocks(const PortClock& a, PortClock& b, double outlier_rate, Rng& rng,
                       SimTime at) {
    const SimTime gap = SimTime::ns(kReadGapNs);
    const SimTime tol =
        2 * (a.timer_step + b.timer_step) + SimTime::ns(2);  // quantization + drift margin

    std::vector<SimTime> accepted;
    std::vector<SimTime> all;
    SimTime t = at;
    for (int round = 0; round < 7; ++round) {
        const SimTime ra1 = corrupted_read(a, t, outlier_rate, rng);
        const SimTime rb1 = corrupted_read(b, t + gap, outlier_rate, rng);
        const SimTime rb2 = corrupted_read(b, t + 2 * gap, outlier_rate, rng);
        const SimTime ra2 = corrupted_read(a, t + 3 * gap, outlier_rate, rng);
        t += 4 * gap;

        const SimTime fwd = rb1 - ra1;   // ~ gap + (off_b - off_a)
        const SimTime bwd = rb2 - ra2;   // ~ -gap + (off_b - off_a)
        const SimTime estimate = SimTime::ticks((fwd + bwd).tick_count() / 2);
        all.push_back(estimate);

        // Synchronous clocks see fwd - bwd == 2*gap up to quantization; a
        // larger disagreement means one of the four reads was an outlier.
        const SimTime disagreement = fwd - bwd - 2 * gap;
        if (SimTime::ticks(std::llabs(disagreement.tick_count())) <= tol)
            accepted.push_back(estimate);
    }

    SimTime est = accepted.empty() ? median(all) : median(accepted);
    const SimTime adjustment = SimTime::ticks(-est.tick_count());
    b.adjust(t, adjustment);
    return SyncResult{adjustment, t, static_cast<int>(accepted.size())};
}

} // namespace mgsim::wire
