#include "mgsim/kernels/crc32.hpp"

#include <array>

namespace mgsim::kernels {

namespace {

constexpr std::uint32_t kPoly = 0xEDB88320u;

struct Tables {
    std::uint32_t t[8][256];
};

Tables build_tables() {
    Tables tb{};
    for (std::uint32_t n = 0; n < 256; ++n) {
        std::uint32_t c = n;
        for (int k = 0; k < 8; ++k)
            c = (c >> 1) ^ ((c & 1) ? kPoly : 0);
        tb.t[0][n] = c;
    }
    for (std::uint32_t n = 0; n < 256; ++n)
        for (int k = 1; k < 8; ++k)
            tb.t[k][n] = (tb.t[k - 1][n] >> 8) ^ tb.t[0][tb.t[k - 1][n] & 0xFF];
    return tb;
}

const Tables& tables() {
    static const Tables tb = build_tables();
    return tb;
}

inline std::uint32_t load_le32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
           static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

} // namespace

std::uint32_t crc32_register(std::span<const std::uint8_t> data) {
    const Tables& tb = tables();
    std::uint32_t crc = 0xFFFFFFFFu;
    const std::uint8_t* p = data.data();
    std::size_t n = data.size();
    while (n >= 8) {
        const std::uint32_t a = crc ^ load_le32(p);
        const std::uint32_t b = load_le32(p + 4);
        crc = tb.t[7][a & 0xFF] ^ tb.t[6][(a >> 8) & 0xFF] ^
              tb.t[5][(a >> 16) & 0xFF] ^ tb.t[4][a >> 24] ^
              tb.t[3][b & 0xFF] ^ tb.t[2][(b >> 8) & 0xFF] ^
              tb.t[1][(b >> 16) & 0xFF] ^ tb.t[0][b >> 24];
        p += 8;
        n -= 8;
    }
    while (n--) {
        crc = (crc >> 8) ^ tb.t[0][(crc ^ *p++) & 0xFF];
    }
    return crc;
}

std::uint32_t crc32(std::span<const std::uint8_t> data) {
    return crc32_register(data) ^ 0xFFFFFFFFu;
}

namespace {
std::uint32_t bit_reverse32(std::uint32_t x) {
    x = (x >> 16) | (x << 16);
    x = ((x & 0xFF00FF00u) >> 8) | ((x & 0x00FF00FFu) << 8);
    x = ((x & 0xF0F0F0F0u) >> 4) | ((x & 0x0F0F0F0Fu) << 4);
    x = ((x & 0xCCCCCCCCu) >> 2) | ((x & 0x33333333u) << 2);
    x = ((x & 0xAAAAAAAAu) >> 1) | ((x & 0x55555555u) << 1);
    return x;
}
} // namespace

std::uint32_t crc32_residue(std::span<const std::uint8_t> frame_with_fcs) {
    return bit_reverse32(crc32_register(frame_with_fcs));
}

} // namespace mgsim::kernels
