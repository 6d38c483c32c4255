#include "mgsim/measure/ptp.hpp"

namespace mgsim::measure {

namespace {

inline std::uint16_t be16(std::span<const std::uint8_t> f, std::size_t off) {
    return static_cast<std::uint16_t>(f[off] << 8 | f[off + 1]);
}

} // namespace

bool should_timestamp(std::span<const std::uint8_t> frame, std::uint16_t udp_ptp_port,
                      std::uint8_t version) {
    if (frame.size() < 16) return false;
    const std::uint16_t ethertype = be16(frame, 12);

    if (ethertype == 0x88F7) {
        // layer-2 PTP; payload starts right after the Ethernet header
        return frame[14 + 1] == version;
    }

    std::size_t l4 = 0;
    if (ethertype == 0x0800) {
        if (frame.size() < 14 + 20) return false;
        const std::size_t ihl = (frame[14] & 0x0F) * 4u;
        if (frame[14 + 9] != 17) return false;  // not UDP
        l4 = 14 + ihl;
    } else if (ethertype == 0x86DD) {
        if (frame.size() < 14 + 40) return false;
        if (frame[14 + 6] != 17) return false;
        l4 = 14 + 40;
    } else {
        return false;
    }

    if (frame.size() < l4 + 8 + 2) return false;
    if (be16(frame, l4 + 2) != udp_ptp_port) return false;
    if (frame.size() < 80) return false;  // NICs refuse short UDP PTP packets
    return frame[l4 + 8 + 1] == version;
}

bool should_timestamp(std::span<const std::uint8_t> frame, const PtpFilter& filter) {
    return should_timestamp(frame, filter.udp_port, filter.version);
}

bool TimestampRegister::latch(SimTime value, std::uint64_t seq) {
    if (occupied_) return false;
    stamp_ = {value, seq};
    occupied_ = true;
    return true;
}

TimestampRegister::Stamp TimestampRegister::read_back() {
    occupied_ = false;
    return stamp_;
}

} // namespace mgsim::measure
