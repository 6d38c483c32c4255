#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mgsim/time.hpp"

namespace mgsim::runtime {

// Nanosecond-resolution pcap (magic 0xA1B23C4D, version 2.4, linktype 1).
// Frames are recorded without preamble/IFG; the FCS is stripped unless the
// writer is opened with with_fcs, which lets external tools inspect the
// deliberately invalid filler frames.

struct PcapRecord {
    SimTime time;                      // floored to integer ns on disk
    std::vector<std::uint8_t> octets;  // as passed to write()
};

class PcapWriter {
public:
    PcapWriter(const std::string& path, bool with_fcs = false);

    // octets include the FCS; times must be non-decreasing.
    void write(SimTime at, const std::vector<std::uint8_t>& octets_with_fcs);
    void close();
    std::uint64_t frames_written() const { return frames_; }

private:
    std::string path_;
    std::vector<std::uint8_t> buf_;
    bool with_fcs_;
    bool open_ = true;
    std::uint64_t frames_ = 0;
    std::int64_t last_ns_ = INT64_MIN;
};

std::vector<PcapRecord> read_pcap(const std::string& path);

} // namespace mgsim::runtime
