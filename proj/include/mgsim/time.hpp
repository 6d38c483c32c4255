#pragma once

#include <cstdint>
#include <compare>

namespace mgsim {

// Simulation time in integer ticks of 0.1 ps. One byte on a 10 GbE wire
// (0.8 ns), one 156.25 MHz timestamp quantum (6.4 ns), and one 82599 timer
// step (12.8 ns) are all exact multiples, so wire and clock arithmetic never
// rounds. Floating point appears only at reporting boundaries.
class SimTime {
public:
    static constexpr std::int64_t kTicksPerNs = 10'000;

    constexpr SimTime() = default;

    static constexpr SimTime ticks(std::int64_t t) { return SimTime(t); }
    static constexpr SimTime ns(std::int64_t n) { return SimTime(n * kTicksPerNs); }
    static SimTime from_ns(double n);    // rounds to nearest tick
    static SimTime from_sec(double s);

    constexpr std::int64_t tick_count() const { return ticks_; }
    double to_ns() const { return static_cast<double>(ticks_) / kTicksPerNs; }
    double to_sec() const { return to_ns() * 1e-9; }
    std::int64_t floor_ns() const;       // pcap export uses floored integer ns

    constexpr SimTime operator+(SimTime o) const { return SimTime(ticks_ + o.ticks_); }
    constexpr SimTime operator-(SimTime o) const { return SimTime(ticks_ - o.ticks_); }
    constexpr SimTime operator*(std::int64_t k) const { return SimTime(ticks_ * k); }
    SimTime& operator+=(SimTime o) { ticks_ += o.ticks_; return *this; }
    SimTime& operator-=(SimTime o) { ticks_ -= o.ticks_; return *this; }
    constexpr auto operator<=>(const SimTime&) const = default;

private:
    constexpr explicit SimTime(std::int64_t t) : ticks_(t) {}
    std::int64_t ticks_ = 0;
};

constexpr SimTime operator*(std::int64_t k, SimTime t) { return t * k; }

} // namespace mgsim
