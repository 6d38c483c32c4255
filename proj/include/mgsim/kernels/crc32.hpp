#pragma once

#include <cstdint>
#include <span>

namespace mgsim::kernels {

// IEEE 802.3 CRC-32 (reflected, poly 0xEDB88320, init and xorout 0xFFFFFFFF),
// slicing-by-8 table kernel.
std::uint32_t crc32(std::span<const std::uint8_t> data);

// Raw register after processing data with init 0xFFFFFFFF, no final xor.
// Checking a received frame: run over frame bytes including the trailing FCS
// and compare crc32_residue against kResidue.
std::uint32_t crc32_register(std::span<const std::uint8_t> data);

// Bit-reversed final register over frame+FCS; constant for any valid frame.
std::uint32_t crc32_residue(std::span<const std::uint8_t> frame_with_fcs);

inline constexpr std::uint32_t kCrc32Residue = 0xC704DD7B;

} // namespace mgsim::kernels
