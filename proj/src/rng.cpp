#include "mgsim/rng.hpp"

#include <cmath>

namespace mgsim {

std::uint64_t Rng::uniform_u64(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo;  // inclusive width minus one
    if (span == UINT64_MAX) return engine_();
    const std::uint64_t n = span + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return lo + v % n;
}

double Rng::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::exponential(double mean) {
    double u;
    do {
        u = uniform01();
    } while (u == 0.0);
    return -mean * std::log(u);
}

std::uint64_t hash_name(std::string_view name) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : name) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace mgsim
