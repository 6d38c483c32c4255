#include "mgsim/kernels/checksum.hpp"

namespace mgsim::kernels {

std::uint64_t sum16_scalar(const std::uint8_t* data, std::size_t len) {
    std::uint64_t sum = 0;
    std::size_t i = 0;
    // Four words per step keeps the dependency chain short.
    for (; i + 8 <= len; i += 8) {
        sum += static_cast<std::uint16_t>(data[i]     | data[i + 1] << 8);
        sum += static_cast<std::uint16_t>(data[i + 2] | data[i + 3] << 8);
        sum += static_cast<std::uint16_t>(data[i + 4] | data[i + 5] << 8);
        sum += static_cast<std::uint16_t>(data[i + 6] | data[i + 7] << 8);
    }
    for (; i + 2 <= len; i += 2)
        sum += static_cast<std::uint16_t>(data[i] | data[i + 1] << 8);
    return sum;
}

namespace {

Sum16Fn resolve_auto() {
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2")) return &sum16_avx2;
#endif
#if defined(__ARM_NEON) || defined(__aarch64__)
    return &sum16_neon;
#endif
    return &sum16_scalar;
}

Sum16Fn g_active = nullptr;

} // namespace

Sum16Fn sum16_active() {
    if (!g_active) g_active = resolve_auto();
    return g_active;
}

std::string_view sum16_backend_name() {
    Sum16Fn fn = sum16_active();
#if defined(__x86_64__) || defined(_M_X64)
    if (fn == &sum16_avx2) return "avx2";
#endif
#if defined(__ARM_NEON) || defined(__aarch64__)
    if (fn == &sum16_neon) return "neon";
#endif
    return "scalar";
}

bool sum16_force_backend(std::string_view name) {
    if (name == "auto") { g_active = resolve_auto(); return true; }
    if (name == "scalar") { g_active = &sum16_scalar; return true; }
#if defined(__x86_64__) || defined(_M_X64)
    if (name == "avx2" && __builtin_cpu_supports("avx2")) { g_active = &sum16_avx2; return true; }
#endif
#if defined(__ARM_NEON) || defined(__aarch64__)
    if (name == "neon") { g_active = &sum16_neon; return true; }
#endif
    return false;
}

namespace {

inline std::uint16_t fold16(std::uint64_t sum) {
    while (sum >> 16) sum = (sum & 0xFFFF) + (sum >> 16);
    return static_cast<std::uint16_t>(sum);
}

inline std::uint16_t bswap16(std::uint16_t v) {
    return static_cast<std::uint16_t>((v << 8) | (v >> 8));
}

// Sum of an even-length span interpreted as big-endian words. The kernels sum
// native little-endian words; the ones-complement sum is byte-order
// independent, so folding and swapping recovers the big-endian result.
inline std::uint16_t be_span_sum(const std::uint8_t* data, std::size_t even_len) {
    return bswap16(fold16(sum16_active()(data, even_len)));
}

} // namespace

void SumAccumulator::add(std::span<const std::uint8_t> data) {
    if (odd_ && !data.empty()) {
        // Pair the dangling high byte (already counted as b<<8) with this low byte.
        sum_ += data[0];
        data = data.subspan(1);
        odd_ = false;
    }
    const std::size_t even = data.size() & ~std::size_t{1};
    if (even) sum_ += be_span_sum(data.data(), even);
    if (data.size() & 1) {
        sum_ += static_cast<std::uint32_t>(data[even]) << 8;
        odd_ = true;
    }
}

void SumAccumulator::add_word(std::uint16_t be_word) {
    sum_ += be_word;
}

std::uint16_t SumAccumulator::fold() const {
    return fold16(sum_);
}

std::uint16_t internet_sum(std::span<const std::uint8_t> data) {
    SumAccumulator acc;
    acc.add(data);
    return acc.fold();
}

} // namespace mgsim::kernels
