// NEON variant of the ones-complement word sum.

#include "mgsim/kernels/checksum.hpp"

#if defined(__ARM_NEON) || defined(__aarch64__)

#include <arm_neon.h>

namespace mgsim::kernels {

std::uint64_t sum16_neon(const std::uint8_t* data, std::size_t len) {
    std::uint64_t total = 0;
    std::size_t i = 0;

    uint32x4_t acc = vdupq_n_u32(0);
    std::size_t pending = 0;

    auto spill = [&] {
        uint64x2_t wide = vpaddlq_u32(acc);
        total += vgetq_lane_u64(wide, 0) + vgetq_lane_u64(wide, 1);
        acc = vdupq_n_u32(0);
        pending = 0;
    };

    for (; i + 16 <= len; i += 16) {
        const uint16x8_t v = vreinterpretq_u16_u8(vld1q_u8(data + i));
        acc = vpadalq_u16(acc, v);
        if (++pending == 8192) spill();
    }
    spill();

    total += sum16_scalar(data + i, len - i);
    return total;
}

} // namespace mgsim::kernels

#endif
