#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mgsim::packet {

enum class Proto : std::uint8_t { Ethernet, IPv4, IPv6, Udp, Tcp, Ptp };

std::string_view proto_name(Proto p);

// Byte range of a header field within the frame.
struct FieldRef {
    std::size_t offset = 0;
    std::size_t size = 0;
};

// Resolved layout of a protocol stack in a frame of a given length.
// Fields are addressed by dotted names (eth.dst, ip4.src, udp.dstPort);
// the short aliases used in scenario files (ethDst, ipSrc, udpDst, ...)
// resolve to the same fields.
class StackLayout {
public:
    StackLayout() = default;

    // Throws ConfigInvalid for an ill-formed stack, LengthTooSmall when the
    // frame cannot hold the headers.
    static StackLayout build(const std::vector<Proto>& stack, std::size_t frame_len);

    FieldRef resolve(std::string_view name) const;  // throws UnknownField
    bool has_field(std::string_view name) const;

    bool has(Proto p) const;
    std::size_t offset_of(Proto p) const;           // throws MissingLayer
    std::size_t header_len_of(Proto p) const;

    std::size_t min_frame_len() const { return min_len_; }
    const std::vector<Proto>& protos() const { return protos_; }

private:
    struct Layer {
        Proto proto;
        std::size_t offset;
        std::size_t header_len;
    };
    std::vector<Proto> protos_;
    std::vector<Layer> layers_;
    std::size_t min_len_ = 0;
};

// Big-endian field access on raw frame bytes. Values wider than 8 bytes are
// written right-aligned into the field (the remaining left bytes keep their
// previous contents, which only matters for IPv6 addresses).
std::uint64_t read_field(std::span<const std::uint8_t> frame, FieldRef f);
void write_field(std::span<std::uint8_t> frame, FieldRef f, std::uint64_t value);
void write_field_bytes(std::span<std::uint8_t> frame, FieldRef f,
                       std::span<const std::uint8_t> value);

// Parses "192.168.1.1", "10:11:12:13:14:15", "fe80::1", "0x2A" or decimal
// into big-endian bytes.
std::vector<std::uint8_t> parse_field_value(std::string_view text);
std::uint64_t parse_field_u64(std::string_view text);  // low 8 bytes of the above

std::string format_ipv4(std::uint32_t addr);

} // namespace mgsim::packet
