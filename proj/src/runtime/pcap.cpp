#include "mgsim/runtime/pcap.hpp"

#include <cstdio>
#include <memory>

#include "mgsim/error.hpp"

namespace mgsim::runtime {

namespace {

constexpr std::uint32_t kMagicNs = 0xA1B23C4D;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 24));
}

std::uint32_t get_u32(const std::vector<std::uint8_t>& b, std::size_t off) {
    return static_cast<std::uint32_t>(b[off]) | static_cast<std::uint32_t>(b[off + 1]) << 8 |
           static_cast<std::uint32_t>(b[off + 2]) << 16 |
           static_cast<std::uint32_t>(b[off + 3]) << 24;
}

} // namespace

PcapWriter::PcapWriter(const std::string& path, bool with_fcs)
    : path_(path), with_fcs_(with_fcs) {
    put_u32(buf_, kMagicNs);
    put_u16(buf_, 2);       // major
    put_u16(buf_, 4);       // minor
    put_u32(buf_, 0);       // thiszone
    put_u32(buf_, 0);       // sigfigs
    put_u32(buf_, 65535);   // snaplen
    put_u32(buf_, 1);       // LINKTYPE_ETHERNET
}

void PcapWriter::write(SimTime at, const std::vector<std::uint8_t>& octets_with_fcs) {
    if (!open_) raise(Errc::IoFailure, path_ + " already closed");
    const std::int64_t ns = at.floor_ns();
    if (ns < last_ns_) raise(Errc::ConfigInvalid, "pcap timestamps must be non-decreasing");
    last_ns_ = ns;

    std::size_t len = octets_with_fcs.size();
    if (!with_fcs_ && len >= 4) len -= 4;

    put_u32(buf_, static_cast<std::uint32_t>(ns / 1'000'000'000));
    put_u32(buf_, static_cast<std::uint32_t>(ns % 1'000'000'000));
    put_u32(buf_, static_cast<std::uint32_t>(len));
    put_u32(buf_, static_cast<std::uint32_t>(len));
    buf_.insert(buf_.end(), octets_with_fcs.begin(),
                octets_with_fcs.begin() + static_cast<std::ptrdiff_t>(len));
    ++frames_;
}

void PcapWriter::close() {
    if (!open_) return;
    open_ = false;
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(std::fopen(path_.c_str(), "wb"),
                                                      &std::fclose);
    if (!f) raise(Errc::IoFailure, "cannot open " + path_ + " for writing");
    if (std::fwrite(buf_.data(), 1, buf_.size(), f.get()) != buf_.size())
        raise(Errc::IoFailure, "short write to " + path_);
}

std::vector<PcapRecord> read_pcap(const std::string& path) {
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(std::fopen(path.c_str(), "rb"),
                                                      &std::fclose);
    if (!f) raise(Errc::IoFailure, "cannot open " + path);
    std::vector<std::uint8_t> data;
    std::uint8_t chunk[4096];
    std::size_t n;
    while ((n = std::fread(chunk, 1, sizeof chunk, f.get())) > 0)
        data.insert(data.end(), chunk, chunk + n);

    if (data.size() < 24 || get_u32(data, 0) != kMagicNs)
        raise(Errc::IoFailure, path + ": not a nanosecond pcap");

    std::vector<PcapRecord> out;
    std::size_t off = 24;
    while (off + 16 <= data.size()) {
        const std::uint64_t sec = get_u32(data, off);
        const std::uint64_t nsec = get_u32(data, off + 4);
        const std::uint32_t incl = get_u32(data, off + 8);
        off += 16;
        if (off + incl > data.size())
            raise(Errc::IoFailure, path + ": truncated record");
        PcapRecord rec;
        rec.time = SimTime::ns(static_cast<std::int64_t>(sec * 1'000'000'000ULL + nsec));
        rec.octets.assign(data.begin() + static_cast<std::ptrdiff_t>(off),
                          data.begin() + static_cast<std::ptrdiff_t>(off + incl));
        out.push_back(std::move(rec));
        off += incl;
    }
    return out;
}

} // namespace mgsim::runtime
