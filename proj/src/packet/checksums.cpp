#include "mgsim/packet/checksums.hpp"

#include "mgsim/error.hpp"
#include "mgsim/kernels/checksum.hpp"
#include "mgsim/kernels/crc32.hpp"

namespace mgsim::packet {

using kernels::SumAccumulator;

std::uint16_t ipv4_checksum(std::span<const std::uint8_t> header) {
    if (header.size() % 2 != 0)
        raise(Errc::OddLength, "header length " + std::to_string(header.size()));
    return static_cast<std::uint16_t>(~kernels::internet_sum(header));
}

namespace {

std::uint16_t l4_checksum_raw(std::span<const std::uint8_t> frame, const StackLayout& layout,
                              Proto proto) {
    if (proto != Proto::Udp && proto != Proto::Tcp)
        raise(Errc::MissingLayer, "L4 checksum needs UDP or TCP");
    if (!layout.has(proto))
        raise(Errc::MissingLayer, std::string(proto_name(proto)) + " not in stack");

    const std::size_t l4_off = layout.offset_of(proto);
    const std::size_t l4_len = frame.size() - l4_off;

    SumAccumulator sum;
    if (layout.has(Proto::IPv4)) {
        const std::size_t ip = layout.offset_of(Proto::IPv4);
        sum.add(frame.subspan(ip + 12, 8));  // src, dst
        sum.add_word(proto == Proto::Udp ? 17 : 6);
        sum.add_word(static_cast<std::uint16_t>(l4_len));
    } else if (layout.has(Proto::IPv6)) {
        const std::size_t ip = layout.offset_of(Proto::IPv6);
        sum.add(frame.subspan(ip + 8, 32));  // src, dst
        sum.add_word(static_cast<std::uint16_t>(l4_len >> 16));
        sum.add_word(static_cast<std::uint16_t>(l4_len));
        sum.add_word(proto == Proto::Udp ? 17 : 6);
    } else {
        raise(Errc::MissingLayer, "no IPv4/IPv6 beneath L4");
    }

    const std::size_t ck_off = layout.resolve(proto == Proto::Udp ? "udp.checksum"
                                                                  : "tcp.checksum").offset;
    sum.add(frame.subspan(l4_off, ck_off - l4_off));
    sum.add_word(0);  // checksum field counts as zero
    sum.add(frame.subspan(ck_off + 2));

    auto ck = static_cast<std::uint16_t>(~sum.fold());
    if (proto == Proto::Udp && ck == 0)
        ck = 0xFFFF;
    return ck;
}

} // namespace

std::uint16_t l4_checksum(const PacketBuffer& buffer, Proto proto) {
    if (!buffer.layout) raise(Errc::MissingLayer, "buffer has no layout");
    return l4_checksum_raw(buffer.bytes, *buffer.layout, proto);
}

std::uint32_t crc32_fcs(std::span<const std::uint8_t> frame) {
    return kernels::crc32(frame);
}

bool fcs_ok(std::span<const std::uint8_t> frame_with_fcs) {
    if (frame_with_fcs.size() < 4) return false;
    return kernels::crc32_residue(frame_with_fcs) == kernels::kCrc32Residue;
}

std::vector<std::uint8_t> materialize(const PacketBuffer& buffer) {
    std::vector<std::uint8_t> out = buffer.bytes;
    out.resize(buffer.frame_len, 0);

    const StackLayout* layout = buffer.layout.get();
    if (layout) {
        if ((buffer.offload & kOffloadIPv4) && layout->has(Proto::IPv4)) {
            const FieldRef ck = layout->resolve("ip4.checksum");
            write_field(out, ck, 0);
            const std::size_t ip = layout->offset_of(Proto::IPv4);
            write_field(out, ck, ipv4_checksum({out.data() + ip, 20}));
        }
        if ((buffer.offload & kOffloadUdp) && layout->has(Proto::Udp)) {
            const FieldRef ck = layout->resolve("udp.checksum");
            write_field(out, ck, 0);
            write_field(out, ck, l4_checksum_raw(out, *layout, Proto::Udp));
        }
        if ((buffer.offload & kOffloadTcp) && layout->has(Proto::Tcp)) {
            const FieldRef ck = layout->resolve("tcp.checksum");
            write_field(out, ck, 0);
            write_field(out, ck, l4_checksum_raw(out, *layout, Proto::Tcp));
        }
    }

    std::uint32_t fcs = crc32_fcs(out);
    if (!buffer.crc_valid)
        fcs = ~fcs;
    out.push_back(static_cast<std::uint8_t>(fcs));
    out.push_back(static_cast<std::uint8_t>(fcs >> 8));
    out.push_back(static_cast<std::uint8_t>(fcs >> 16));
    out.push_back(static_cast<std::uint8_t>(fcs >> 24));
    return out;
}

} // namespace mgsim::packet
