// AVX2 variant of the ones-complement word sum. Built as its own translation
// unit with -mavx2; callers reach it only through the runtime dispatcher.

#include "mgsim/kernels/checksum.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace mgsim::kernels {

std::uint64_t sum16_avx2(const std::uint8_t* data, std::size_t len) {
    std::uint64_t total = 0;
    std::size_t i = 0;

    const __m256i lo_mask = _mm256_set1_epi32(0x0000FFFF);
    __m256i acc = _mm256_setzero_si256();
    std::size_t pending = 0;  // iterations since the last spill to 64-bit

    auto spill = [&] {
        alignas(32) std::uint32_t lanes[8];
        _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
        for (std::uint32_t v : lanes) total += v;
        acc = _mm256_setzero_si256();
        pending = 0;
    };

    for (; i + 32 <= len; i += 32) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i));
        acc = _mm256_add_epi32(acc, _mm256_and_si256(v, lo_mask));
        acc = _mm256_add_epi32(acc, _mm256_srli_epi32(v, 16));
        // Each u32 lane grows by at most 2*0xFFFF per iteration; spill well
        // before it can wrap.
        if (++pending == 8192) spill();
    }
    spill();

    total += sum16_scalar(data + i, len - i);
    return total;
}

} // namespace mgsim::kernels

#endif
