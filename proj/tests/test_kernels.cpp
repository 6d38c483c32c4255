#include <doctest.h>

#include <vector>

#include "mgsim/kernels/checksum.hpp"
#include "mgsim/kernels/crc32.hpp"
#include "mgsim/rng.hpp"
#include "oracles.hpp"

using namespace mgsim;

namespace {

std::vector<std::uint8_t> random_bytes(Rng& rng, std::size_t n) {
    std::vector<std::uint8_t> v(n);
    for (auto& b : v) b = static_cast<std::uint8_t>(rng.uniform_u64(0, 255));
    return v;
}

} // namespace

TEST_CASE("internet_sum matches the naive oracle on random spans") {
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        const auto len = static_cast<std::size_t>(rng.uniform_u64(0, 1600));
        const auto data = random_bytes(rng, len);
        const std::uint16_t got = kernels::internet_sum(data);
        CHECK(got == oracles::naive_internet_sum(data));
    }
}

TEST_CASE("sum16 backends are equivalent") {
    REQUIRE(kernels::sum16_force_backend("scalar"));
    Rng rng(11);
    std::vector<std::vector<std::uint8_t>> inputs;
    for (int i = 0; i < 200; ++i)
        inputs.push_back(random_bytes(rng, static_cast<std::size_t>(rng.uniform_u64(0, 4096)) & ~std::size_t{1}));
    inputs.push_back(std::vector<std::uint8_t>(1 << 20, 0xFF));  // spill path

    std::vector<std::uint16_t> scalar;
    for (const auto& in : inputs) scalar.push_back(kernels::internet_sum(in));

    for (const char* backend : {"avx2", "neon"}) {
        if (!kernels::sum16_force_backend(backend)) continue;
        INFO("backend ", backend);
        for (std::size_t i = 0; i < inputs.size(); ++i)
            CHECK(kernels::internet_sum(inputs[i]) == scalar[i]);
    }
    kernels::sum16_force_backend("auto");
}

TEST_CASE("dispatched backend is the widest available") {
    kernels::sum16_force_backend("auto");
#if defined(__x86_64__)
    if (__builtin_cpu_supports("avx2"))
        CHECK(kernels::sum16_backend_name() == "avx2");
#endif
    CHECK(kernels::sum16_active() != nullptr);
}

TEST_CASE("crc32 check value and oracle equivalence") {
    const std::vector<std::uint8_t> check{'1', '2', '3', '4', '5', '6', '7', '8', '9'};
    CHECK(kernels::crc32(check) == 0xCBF43926);
    CHECK(oracles::bitwise_crc32(check) == 0xCBF43926);

    const std::vector<std::uint8_t> zero{0x00};
    CHECK(kernels::crc32(zero) == oracles::bitwise_crc32(zero));
    CHECK(kernels::crc32(zero) == 0xD202EF8D);

    Rng rng(13);
    for (int i = 0; i < 500; ++i) {
        const auto data = random_bytes(rng, static_cast<std::size_t>(rng.uniform_u64(1, 512)));
        CHECK(kernels::crc32(data) == oracles::bitwise_crc32(data));
    }
}

TEST_CASE("crc32 residue is constant for frames with a correct FCS") {
    Rng rng(17);
    for (int i = 0; i < 200; ++i) {
        auto frame = random_bytes(rng, static_cast<std::size_t>(rng.uniform_u64(1, 256)));
        const std::uint32_t fcs = kernels::crc32(frame);
        frame.push_back(static_cast<std::uint8_t>(fcs));
        frame.push_back(static_cast<std::uint8_t>(fcs >> 8));
        frame.push_back(static_cast<std::uint8_t>(fcs >> 16));
        frame.push_back(static_cast<std::uint8_t>(fcs >> 24));
        CHECK(kernels::crc32_residue(frame) == kernels::kCrc32Residue);
        CHECK(oracles::bit_reverse32(oracles::bitwise_crc32_register(frame)) ==
              kernels::kCrc32Residue);
    }
}
