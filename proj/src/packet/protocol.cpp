#include "mgsim/packet/protocol.hpp"

#include <algorithm>
#include <array>
#include <charconv>

#include "mgsim/error.hpp"

namespace mgsim::packet {

std::string_view proto_name(Proto p) {
    switch (p) {
    case Proto::Ethernet: return "eth";
    case Proto::IPv4:     return "ip4";
    case Proto::IPv6:     return "ip6";
    case Proto::Udp:      return "udp";
    case Proto::Tcp:      return "tcp";
    case Proto::Ptp:      return "ptp";
    }
    return "?";
}

namespace {

struct FieldDef {
    std::string_view name;
    std::size_t offset;
    std::size_t size;
};

constexpr std::array eth_fields = {
    FieldDef{"dst", 0, 6}, FieldDef{"src", 6, 6}, FieldDef{"type", 12, 2},
};
constexpr std::array ip4_fields = {
    FieldDef{"versionIhl", 0, 1}, FieldDef{"tos", 1, 1},    FieldDef{"length", 2, 2},
    FieldDef{"id", 4, 2},         FieldDef{"flags", 6, 2},  FieldDef{"ttl", 8, 1},
    FieldDef{"protocol", 9, 1},   FieldDef{"checksum", 10, 2},
    FieldDef{"src", 12, 4},       FieldDef{"dst", 16, 4},
};
constexpr std::array ip6_fields = {
    FieldDef{"length", 4, 2}, FieldDef{"nextHeader", 6, 1}, FieldDef{"hopLimit", 7, 1},
    FieldDef{"src", 8, 16},   FieldDef{"dst", 24, 16},
};
constexpr std::array udp_fields = {
    FieldDef{"srcPort", 0, 2}, FieldDef{"dstPort", 2, 2},
    FieldDef{"length", 4, 2},  FieldDef{"checksum", 6, 2},
};
constexpr std::array tcp_fields = {
    FieldDef{"srcPort", 0, 2},  FieldDef{"dstPort", 2, 2}, FieldDef{"seq", 4, 4},
    FieldDef{"ack", 8, 4},      FieldDef{"dataOffset", 12, 1}, FieldDef{"flags", 13, 1},
    FieldDef{"window", 14, 2},  FieldDef{"checksum", 16, 2}, FieldDef{"urgent", 18, 2},
};
constexpr std::array ptp_fields = {
    FieldDef{"messageType", 0, 1}, FieldDef{"version", 1, 1},
};

std::span<const FieldDef> fields_of(Proto p) {
    switch (p) {
    case Proto::Ethernet: return eth_fields;
    case Proto::IPv4:     return ip4_fields;
    case Proto::IPv6:     return ip6_fields;
    case Proto::Udp:      return udp_fields;
    case Proto::Tcp:      return tcp_fields;
    case Proto::Ptp:      return ptp_fields;
    }
    return {};
}

std::size_t fixed_header_len(Proto p) {
    switch (p) {
    case Proto::Ethernet: return 14;
    case Proto::IPv4:     return 20;   // no options
    case Proto::IPv6:     return 40;
    case Proto::Udp:      return 8;
    case Proto::Tcp:      return 20;   // no options
    case Proto::Ptp:      return 2;    // message type + version; rest is payload
    }
    return 0;
}

// Alias table for the short names used in scenario defaults.
struct Alias {
    std::string_view alias;
    std::string_view layer;   // empty = depends on stack (ipSrc -> ip4 or ip6)
    std::string_view field;
};

constexpr std::array aliases = {
    Alias{"ethSrc", "eth", "src"},   Alias{"ethDst", "eth", "dst"},
    Alias{"ethType", "eth", "type"},
    Alias{"ipSrc", "", "src"},       Alias{"ipDst", "", "dst"},
    Alias{"ipTTL", "ip4", "ttl"},
    Alias{"udpSrc", "udp", "srcPort"}, Alias{"udpDst", "udp", "dstPort"},
    Alias{"tcpSrc", "tcp", "srcPort"}, Alias{"tcpDst", "tcp", "dstPort"},
    Alias{"ptpType", "ptp", "messageType"}, Alias{"ptpVersion", "ptp", "version"},
};

} // namespace

StackLayout StackLayout::build(const std::vector<Proto>& stack, std::size_t frame_len) {
    if (stack.empty() || stack.front() != Proto::Ethernet)
        raise(Errc::ConfigInvalid, "protocol stack must start with Ethernet");
    StackLayout out;
    out.protos_ = stack;
    std::size_t off = 0;
    for (std::size_t i = 0; i < stack.size(); ++i) {
        const Proto p = stack[i];
        for (std::size_t j = 0; j < i; ++j)
            if (stack[j] == p)
                raise(Errc::ConfigInvalid, std::string("duplicate layer ") + std::string(proto_name(p)));
        out.layers_.push_back({p, off, fixed_header_len(p)});
        off += fixed_header_len(p);
    }
    out.min_len_ = off;
    if (frame_len < out.min_len_)
        raise(Errc::LengthTooSmall, "frame length " + std::to_string(frame_len) +
                                        " below stack minimum " + std::to_string(out.min_len_));
    return out;
}

bool StackLayout::has(Proto p) const {
    return std::any_of(layers_.begin(), layers_.end(),
                       [p](const Layer& l) { return l.proto == p; });
}

std::size_t StackLayout::offset_of(Proto p) const {
    for (const Layer& l : layers_)
        if (l.proto == p) return l.offset;
    raise(Errc::MissingLayer, std::string(proto_name(p)) + " not in stack");
}

std::size_t StackLayout::header_len_of(Proto p) const {
    for (const Layer& l : layers_)
        if (l.proto == p) return l.header_len;
    raise(Errc::MissingLayer, std::string(proto_name(p)) + " not in stack");
}

namespace {

std::optional<Proto> proto_by_key(std::string_view key) {
    if (key == "eth") return Proto::Ethernet;
    if (key == "ip4") return Proto::IPv4;
    if (key == "ip6") return Proto::IPv6;
    if (key == "udp") return Proto::Udp;
    if (key == "tcp") return Proto::Tcp;
    if (key == "ptp") return Proto::Ptp;
    return std::nullopt;
}

} // namespace

FieldRef StackLayout::resolve(std::string_view name) const {
    std::string_view layer_key, field_key;
    const auto dot = name.find('.');
    if (dot != std::string_view::npos) {
        layer_key = name.substr(0, dot);
        field_key = name.substr(dot + 1);
    } else {
        for (const Alias& a : aliases) {
            if (a.alias == name) {
                field_key = a.field;
                if (!a.layer.empty()) {
                    layer_key = a.layer;
                } else {
                    layer_key = has(Proto::IPv6) ? "ip6" : "ip4";
                }
                break;
            }
        }
        if (field_key.empty())
            raise(Errc::UnknownField, std::string(name));
    }
    const auto proto = proto_by_key(layer_key);
    if (!proto || !has(*proto))
        raise(Errc::UnknownField, std::string(name) + " (layer not in stack)");
    for (const FieldDef& f : fields_of(*proto)) {
        if (f.name == field_key)
            return FieldRef{offset_of(*proto) + f.offset, f.size};
    }
    raise(Errc::UnknownField, std::string(name));
}

bool StackLayout::has_field(std::string_view name) const {
    try {
        resolve(name);
        return true;
    } catch (const Error&) {
        return false;
    }
}

std::uint64_t read_field(std::span<const std::uint8_t> frame, FieldRef f) {
    std::uint64_t v = 0;
    const std::size_t take = std::min<std::size_t>(f.size, 8);
    const std::size_t start = f.offset + f.size - take;
    for (std::size_t i = 0; i < take; ++i)
        v = (v << 8) | frame[start + i];
    return v;
}

void write_field(std::span<std::uint8_t> frame, FieldRef f, std::uint64_t value) {
    const std::size_t take = std::min<std::size_t>(f.size, 8);
    const std::size_t start = f.offset + f.size - take;
    for (std::size_t i = 0; i < take; ++i)
        frame[start + i] = static_cast<std::uint8_t>(value >> (8 * (take - 1 - i)));
}

void write_field_bytes(std::span<std::uint8_t> frame, FieldRef f,
                       std::span<const std::uint8_t> value) {
    const std::size_t take = std::min(value.size(), f.size);
    const std::size_t dst = f.offset + f.size - take;
    const std::size_t src = value.size() - take;
    for (std::size_t i = 0; i < take; ++i)
        frame[dst + i] = value[src + i];
    for (std::size_t i = f.offset; i < dst; ++i)
        frame[i] = 0;
}

namespace {

std::vector<std::uint8_t> parse_ipv6(std::string_view s) {
    std::vector<std::uint16_t> head, tail;
    bool seen_gap = false;
    std::size_t pos = 0;
    auto parse_group = [&](std::string_view g) -> std::uint16_t {
        unsigned v = 0;
        auto res = std::from_chars(g.data(), g.data() + g.size(), v, 16);
        if (res.ec != std::errc{} || v > 0xFFFF)
            raise(Errc::ConfigInvalid, "bad IPv6 group: " + std::string(g));
        return static_cast<std::uint16_t>(v);
    };
    while (pos <= s.size()) {
        if (pos + 1 < s.size() && s[pos] == ':' && s[pos + 1] == ':') {
            if (seen_gap) raise(Errc::ConfigInvalid, "bad IPv6: " + std::string(s));
            seen_gap = true;
            pos += 2;
            if (pos == s.size()) break;
            continue;
        }
        if (pos < s.size() && s[pos] == ':') { ++pos; continue; }
        auto end = s.find(':', pos);
        if (end == std::string_view::npos) end = s.size();
        if (end == pos) break;
        (seen_gap ? tail : head).push_back(parse_group(s.substr(pos, end - pos)));
        pos = end;
        if (pos == s.size()) break;
    }
    if (head.size() + tail.size() > 8 || (!seen_gap && head.size() != 8))
        raise(Errc::ConfigInvalid, "bad IPv6: " + std::string(s));
    std::vector<std::uint8_t> out(16, 0);
    for (std::size_t i = 0; i < head.size(); ++i) {
        out[2 * i] = static_cast<std::uint8_t>(head[i] >> 8);
        out[2 * i + 1] = static_cast<std::uint8_t>(head[i]);
    }
    for (std::size_t i = 0; i < tail.size(); ++i) {
        const std::size_t g = 8 - tail.size() + i;
        out[2 * g] = static_cast<std::uint8_t>(tail[i] >> 8);
        out[2 * g + 1] = static_cast<std::uint8_t>(tail[i]);
    }
    return out;
}

} // namespace

std::vector<std::uint8_t> parse_field_value(std::string_view text) {
    if (text.find('.') != std::string_view::npos &&
        text.find_first_not_of("0123456789.") == std::string_view::npos) {
        // dotted IPv4
        std::vector<std::uint8_t> out;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            auto end = text.find('.', pos);
            if (end == std::string_view::npos) end = text.size();
            unsigned v = 256;
            auto res = std::from_chars(text.data() + pos, text.data() + end, v);
            if (res.ec != std::errc{} || v > 255)
                raise(Errc::ConfigInvalid, "bad IPv4: " + std::string(text));
            out.push_back(static_cast<std::uint8_t>(v));
            if (end == text.size()) break;
            pos = end + 1;
        }
        if (out.size() != 4) raise(Errc::ConfigInvalid, "bad IPv4: " + std::string(text));
        return out;
    }
    if (std::count(text.begin(), text.end(), ':') == 5 && text.find("::") == std::string_view::npos) {
        // colon-separated MAC
        std::vector<std::uint8_t> out;
        std::size_t pos = 0;
        for (int i = 0; i < 6; ++i) {
            auto end = text.find(':', pos);
            if (end == std::string_view::npos) end = text.size();
            unsigned v = 256;
            auto res = std::from_chars(text.data() + pos, text.data() + end, v, 16);
            if (res.ec != std::errc{} || v > 255)
                raise(Errc::ConfigInvalid, "bad MAC: " + std::string(text));
            out.push_back(static_cast<std::uint8_t>(v));
            pos = end + 1;
        }
        return out;
    }
    if (text.find(':') != std::string_view::npos)
        return parse_ipv6(text);
    // plain number, decimal or 0x-hex
    std::uint64_t v = 0;
    std::string_view digits = text;
    int base = 10;
    if (digits.starts_with("0x") || digits.starts_with("0X")) {
        digits.remove_prefix(2);
        base = 16;
    }
    auto res = std::from_chars(digits.data(), digits.data() + digits.size(), v, base);
    if (res.ec != std::errc{} || res.ptr != digits.data() + digits.size())
        raise(Errc::ConfigInvalid, "bad field value: " + std::string(text));
    std::vector<std::uint8_t> out(8);
    for (int i = 0; i < 8; ++i)
        out[i] = static_cast<std::uint8_t>(v >> (8 * (7 - i)));
    return out;
}

std::uint64_t parse_field_u64(std::string_view text) {
    const auto bytes = parse_field_value(text);
    std::uint64_t v = 0;
    const std::size_t take = std::min<std::size_t>(bytes.size(), 8);
    for (std::size_t i = bytes.size() - take; i < bytes.size(); ++i)
        v = (v << 8) | bytes[i];
    return v;
}

std::string format_ipv4(std::uint32_t addr) {
    return std::to_string(addr >> 24) + "." + std::to_string((addr >> 16) & 0xFF) + "." +
           std::to_string((addr >> 8) & 0xFF) + "." + std::to_string(addr & 0xFF);
}

} // namespace mgsim::packet
