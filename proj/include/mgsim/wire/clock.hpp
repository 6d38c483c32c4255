#pragma once

#include <cstdint>

#include "mgsim/rng.hpp"
#include "mgsim/time.hpp"

namespace mgsim::wire {

enum class ClockPreset { Ideal, I82599, X540, I82580 };

// Quantized, drifting per-port time source. Reads floor the drift-adjusted
// time onto the timer grid (timer_step, grid origin quant_phase) and add
// post_phase on top; the 82580 yields values of the form n*64ns + k*8ns that
// way. timer_step 0 means an ideal, unquantized clock.
class PortClock {
public:
    SimTime granularity;          // timestamp event resolution (histogram bin default)
    SimTime timer_step;           // timer increment quantum
    SimTime quant_phase;          // timer grid origin in [0, timer_step)
    SimTime post_phase;           // added after quantization (82580: k*8 ns)
    SimTime offset;               // deviation from true time, fixed at epoch
    double drift = 0.0;           // dimensionless rate (35e-6 = 35 us/s)
    SimTime epoch;                // true time of the last offset fix
    bool phase_per_measurement = false;  // timer phase redrawn per latency sample
    bool block_code_jitter = false;      // copper layer-1 jitter (applied by measure)

    SimTime read(SimTime true_time) const;

    // offset + drift*(t - epoch), before quantization.
    SimTime effective_offset(SimTime true_time) const;

    // Atomic read-modify-write offset fix: rebases epoch to `at` and shifts
    // the effective offset by `delta`.
    void adjust(SimTime at, SimTime delta);

    void set_quant_phase(SimTime phase) { quant_phase = phase; }
};

// Per-reset clock instance; phase state is drawn from rng. Presets model the
// 10 GbE chips at 10 GbE rates and the 82580 at 1 GbE; at a 1 GbE line rate
// the 10 GbE chips run their timestamp unit ten times slower.
PortClock make_clock(ClockPreset preset, std::int64_t line_rate_bps, Rng& rng);

struct SyncResult {
    SimTime adjustment;     // applied to b's offset
    SimTime completed_at;   // true time after the last read
    int rounds_accepted = 0;
};

// Clock synchronization by paired double-reads (a-then-b, b-then-a), repeated
// 7 times. Rounds whose forward/backward differences disagree beyond the
// quantization tolerance are discarded as outlier reads; the median of the
// surviving offset estimates is applied to b atomically. Each individual read
// is corrupted with probability outlier_rate by a uniform error in +-10 us.
SyncResult sync_clocks(const PortClock& a, PortClock& b, double outlier_rate, Rng& rng,
                       SimTime at);

} // namespace mgsim::wire
