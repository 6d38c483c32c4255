// Independent reference implementations used as test oracles. These are kept
// deliberately naive and separate from the library kernels they check.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace oracles {

// Plain 32-bit accumulator ones-complement checksum over big-endian words,
// odd trailing byte padded with zero. Returns the complemented sum.
inline std::uint16_t naive_internet_checksum(std::span<const std::uint8_t> data) {
    std::uint32_t sum = 0;
    for (std::size_t i = 0; i + 1 < data.size(); i += 2)
        sum += static_cast<std::uint32_t>(data[i]) << 8 | data[i + 1];
    if (data.size() % 2)
        sum += static_cast<std::uint32_t>(data.back()) << 8;
    while (sum >> 16)
        sum = (sum & 0xFFFF) + (sum >> 16);
    return static_cast<std::uint16_t>(~sum);
}

// Folded sum without the final complement (for verification checks).
inline std::uint16_t naive_internet_sum(std::span<const std::uint8_t> data) {
    return static_cast<std::uint16_t>(~naive_internet_checksum(data));
}

// Bit-by-bit shift register CRC-32 (reflected, poly 0xEDB88320).
inline std::uint32_t bitwise_crc32_register(std::span<const std::uint8_t> data) {
    std::uint32_t reg = 0xFFFFFFFFu;
    for (std::uint8_t byte : data) {
        reg ^= byte;
        for (int bit = 0; bit < 8; ++bit)
            reg = (reg >> 1) ^ ((reg & 1) ? 0xEDB88320u : 0u);
    }
    return reg;
}

inline std::uint32_t bitwise_crc32(std::span<const std::uint8_t> data) {
    return bitwise_crc32_register(data) ^ 0xFFFFFFFFu;
}

inline std::uint32_t bit_reverse32(std::uint32_t x) {
    std::uint32_t r = 0;
    for (int i = 0; i < 32; ++i)
        if (x & (1u << i)) r |= 1u << (31 - i);
    return r;
}

} // namespace oracles
