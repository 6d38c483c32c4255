#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace mgsim::kernels {

// Ones-complement 16-bit sum kernels (RFC 1071 arithmetic). The kernels sum
// native-endian 16-bit words over an even-length span; the Internet checksum
// is byte-order independent, so the caller folds and swaps once at the end.
// A scalar reference kernel always exists; wider variants are selected at
// runtime from CPU capabilities and are equivalence-tested against it.

using Sum16Fn = std::uint64_t (*)(const std::uint8_t* data, std::size_t len);

std::uint64_t sum16_scalar(const std::uint8_t* data, std::size_t len);
#if defined(__x86_64__) || defined(_M_X64)
std::uint64_t sum16_avx2(const std::uint8_t* data, std::size_t len);
#endif
#if defined(__ARM_NEON) || defined(__aarch64__)
std::uint64_t sum16_neon(const std::uint8_t* data, std::size_t len);
#endif

// Active kernel (dispatched once on first use).
Sum16Fn sum16_active();
std::string_view sum16_backend_name();

// Force a specific backend ("scalar", "avx2", "neon", "auto"); returns false
// if unavailable on this machine. Used by the equivalence tests.
bool sum16_force_backend(std::string_view name);

// Folded Internet checksum of a byte span: ones-complement sum of big-endian
// 16-bit words, odd trailing byte padded on the right. Returns the folded sum
// (not complemented).
std::uint16_t internet_sum(std::span<const std::uint8_t> data);

// Fold a partial sum accumulated from several spans (each treated as a
// big-endian word stream; spans must be even-length except the last).
class SumAccumulator {
public:
    void add(std::span<const std::uint8_t> data);
    void add_word(std::uint16_t be_word);
    std::uint16_t fold() const;

private:
    std::uint64_t sum_ = 0;   // native-endian word sum
    bool odd_ = false;
};

} // namespace mgsim::kernels
