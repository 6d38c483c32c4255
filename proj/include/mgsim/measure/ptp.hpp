#pragma once

#include <cstdint>
#include <span>

#include "mgsim/time.hpp"

namespace mgsim::measure {

// Timestamp-trigger rules of the modeled NICs: a frame is hardware-timestamped
// when it is a layer-2 PTP frame (EtherType 0x88F7) or a UDP frame to the
// configured PTP port with a total length of at least 80 bytes; in both cases
// the second payload byte must match the configured PTP version. Frame octets
// are given as on the wire (FCS included, no preamble).
struct PtpFilter {
    std::uint16_t udp_port = 319;
    std::uint8_t version = 2;
};

bool should_timestamp(std::span<const std::uint8_t> frame, std::uint16_t udp_ptp_port,
                      std::uint8_t version = 2);
bool should_timestamp(std::span<const std::uint8_t> frame, const PtpFilter& filter);

// Single-slot timestamp latch: a new value can only be stored after the
// previous one was read back, so at most one timestamped packet is in flight.
class TimestampRegister {
public:
    bool occupied() const { return occupied_; }

    // Returns false (and leaves the register untouched) when still occupied.
    bool latch(SimTime value, std::uint64_t seq);

    struct Stamp {
        SimTime value;
        std::uint64_t seq;
    };
    Stamp read_back();  // clears the register; caller must check occupied()

private:
    bool occupied_ = false;
    Stamp stamp_{};
};

// Register plus the lost-sample counter for events that hit an occupied slot.
struct TimestampUnit {
    TimestampRegister reg;
    std::uint64_t lost_samples = 0;

    void latch(SimTime value, std::uint64_t seq) {
        if (!reg.latch(value, seq)) ++lost_samples;
    }
};

} // namespace mgsim::measure
