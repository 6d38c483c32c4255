#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mgsim {

// Seeded generator with self-contained bounded draws. std::mt19937_64 is
// fully specified by the standard; the distribution helpers here are our own
// because the std distributions are implementation-defined and would break
// the byte-identical-report contract across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Inclusive range, unbiased via rejection.
    std::uint64_t uniform_u64(std::uint64_t lo, std::uint64_t hi);

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01();

    bool chance(double p) { return uniform01() < p; }

    // Exponential with the given mean; draw is > 0.
    double exponential(double mean);

private:
    std::mt19937_64 engine_;
};

// FNV-1a, used to derive per-task seeds so adding a task never perturbs the
// streams of the others.
std::uint64_t hash_name(std::string_view name);

inline std::uint64_t derive_seed(std::uint64_t scenario_seed, std::string_view task_id) {
    return scenario_seed ^ hash_name(task_id);
}

} // namespace mgsim
