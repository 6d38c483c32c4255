#include "mgsim/packet/template.hpp"

#include "mgsim/error.hpp"

namespace mgsim::packet {

namespace {

std::uint16_t ethertype_for(Proto p) {
    switch (p) {
    case Proto::IPv4: return 0x0800;
    case Proto::IPv6: return 0x86DD;
    case Proto::Ptp:  return 0x88F7;
    default:          return 0;
    }
}

std::uint8_t ip_proto_for(Proto p) {
    switch (p) {
    case Proto::Udp: return 17;
    case Proto::Tcp: return 6;
    default:         return 0;
    }
}

} // namespace

PacketBuffer make_template(const PacketTemplate& spec) {
    if (spec.pkt_length < 60)
        raise(Errc::LengthTooSmall, "pkt_length " + std::to_string(spec.pkt_length) +
                                        " below 60-byte minimum (64 with FCS)");
    if (spec.pkt_length > 1514)
        raise(Errc::LengthTooLarge, "pkt_length above 1514-byte standard frame");

    auto layout = std::make_shared<StackLayout>(
        StackLayout::build(spec.protocol_stack, spec.pkt_length));

    PacketBuffer buf;
    buf.layout = layout;
    buf.bytes.assign(spec.pkt_length, 0);
    buf.frame_len = static_cast<std::uint32_t>(spec.pkt_length);
    buf.crc_valid = true;

    const auto& protos = layout->protos();
    for (std::size_t i = 0; i < protos.size(); ++i) {
        const Proto p = protos[i];
        const Proto next = (i + 1 < protos.size()) ? protos[i + 1] : p;
        const bool has_next = i + 1 < protos.size();
        const std::size_t off = layout->offset_of(p);
        switch (p) {
        case Proto::Ethernet:
            if (has_next)
                write_field(buf.bytes, layout->resolve("eth.type"), ethertype_for(next));
            break;
        case Proto::IPv4:
            buf.bytes[off] = 0x45;
            write_field(buf.bytes, layout->resolve("ip4.length"),
                        static_cast<std::uint64_t>(spec.pkt_length - off));
            buf.set("ip4.ttl", 64);
            if (has_next) buf.set("ip4.protocol", ip_proto_for(next));
            break;
        case Proto::IPv6:
            buf.bytes[off] = 0x60;
            write_field(buf.bytes, layout->resolve("ip6.length"),
                        static_cast<std::uint64_t>(spec.pkt_length - off - 40));
            buf.set("ip6.hopLimit", 64);
            if (has_next) buf.set("ip6.nextHeader", ip_proto_for(next));
            break;
        case Proto::Udp:
            write_field(buf.bytes, layout->resolve("udp.length"),
                        static_cast<std::uint64_t>(spec.pkt_length - off));
            break;
        case Proto::Tcp:
            buf.set("tcp.dataOffset", 0x50);
            break;
        case Proto::Ptp:
            buf.set("ptp.version", 2);
            break;
        }
    }

    for (const auto& [name, value] : spec.defaults) {
        const FieldRef ref = layout->resolve(name);  // throws UnknownField
        write_field_bytes(buf.bytes, ref, parse_field_value(value));
    }
    return buf;
}

} // namespace mgsim::packet
