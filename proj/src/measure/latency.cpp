#include "mgsim/measure/latency.hpp"

#include <algorithm>

#include "mgsim/error.hpp"

namespace mgsim::measure {

LatencyPath direct_link_path(const wire::LinkModel& link, std::int64_t frame_wire_len) {
    const SimTime delay = wire::serialization_time(frame_wire_len, link.line_rate_bps) +
                          wire::propagation_delay(link);
    return [delay](SimTime depart) -> std::optional<SimTime> { return depart + delay; };
}

namespace {

// 10GBASE-T layer-1 block code jitter: discrete, symmetric, in units of the
// clock granularity g. Support spans 10g (64 ns at 10 GbE) end to end and
// 99.6% of the mass stays within +-g of the median.
SimTime block_code_jitter(const wire::PortClock& clock, Rng& rng) {
    const double u = rng.uniform01();
    const SimTime g = clock.granularity;
    if (u < 0.002) return SimTime::ticks(-5 * g.tick_count());
    if (u < 0.200) return SimTime::ticks(-g.tick_count());
    if (u < 0.800) return SimTime{};
    if (u < 0.998) return g;
    return 5 * g;
}

} // namespace

LatencyRun measure_latency(wire::PortClock& tx_clock, wire::PortClock& rx_clock,
                           const LatencyPath& path, const LatencyConfig& cfg, Rng& rng) {
    LatencyRun run;
    run.samples.reserve(cfg.n_samples);
    TimestampUnit tx_unit, rx_unit;

    for (std::size_t i = 0; i < cfg.n_samples; ++i) {
        SimTime now = cfg.sample_spacing * static_cast<std::int64_t>(i);

        if (cfg.resync_each_sample) {
            const wire::SyncResult sr =
                wire::sync_clocks(tx_clock, rx_clock, cfg.sync_outlier_rate, rng, now);
            now = sr.completed_at;
        }

        // The timer of a dual-port NIC is one oscillator; its phase relative
        // to the packet is arbitrary per measurement.
        if (tx_clock.phase_per_measurement || rx_clock.phase_per_measurement) {
            const double u = rng.uniform01();
            auto phase_of = [u](const wire::PortClock& c) {
                return SimTime::ticks(static_cast<std::int64_t>(
                    u * static_cast<double>(c.timer_step.tick_count())));
            };
            if (tx_clock.phase_per_measurement) tx_clock.set_quant_phase(phase_of(tx_clock));
            if (rx_clock.phase_per_measurement) rx_clock.set_quant_phase(phase_of(rx_clock));
        }

        const SimTime depart = now;
        const std::optional<SimTime> arrival = path(depart);
        if (!arrival)
            raise(Errc::Timeout, "timestamped packet " + std::to_string(i) + " lost");

        // Stamp when the frame has left the wire / as it arrives.
        const SimTime tx_stamp_at = depart + cfg.frame_serialization;
        SimTime rx_stamp_at = *arrival;
        if (rx_clock.block_code_jitter || tx_clock.block_code_jitter)
            rx_stamp_at += block_code_jitter(rx_clock, rng);

        tx_unit.latch(tx_clock.read(tx_stamp_at), i);
        rx_unit.latch(rx_clock.read(rx_stamp_at), i);

        // One packet per round trip: both registers are read back before the
        // next sample can latch.
        const auto tx_stamp = tx_unit.reg.read_back();
        const auto rx_stamp = rx_unit.reg.read_back();
        run.samples.push_back({tx_stamp.value, rx_stamp.value, i});
    }

    run.lost_samples = tx_unit.lost_samples + rx_unit.lost_samples;
    if (!run.samples.empty()) {
        std::vector<double> lat;
        lat.reserve(run.samples.size());
        double sum = 0;
        for (const auto& s : run.samples) {
            lat.push_back(s.latency().to_ns());
            sum += lat.back();
        }
        std::sort(lat.begin(), lat.end());
        run.median_ns = lat[lat.size() / 2];
        run.mean_ns = sum / static_cast<double>(lat.size());
        run.min_ns = lat.front();
        run.max_ns = lat.back();
    }
    return run;
}

LoopbackPair make_loopback_pair(wire::ClockPreset preset, std::int64_t line_rate_bps,
                                Rng& rng) {
    LoopbackPair pair{wire::make_clock(preset, line_rate_bps, rng),
                      wire::make_clock(preset, line_rate_bps, rng)};
    pair.rx.quant_phase = pair.tx.quant_phase;  // shared oscillator
    pair.rx.post_phase = pair.tx.post_phase;
    return pair;
}

} // namespace mgsim::measure
