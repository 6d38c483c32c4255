#pragma once

#include <cstdint>
#include <string>

#include "mgsim/packet/buffer.hpp"
#include "mgsim/rng.hpp"

namespace mgsim::packet {

// Per-packet field rewriter. WrappingCounter walks lo, lo+1, ..., hi, lo, ...
// and keeps its position across batches; RandomUniform draws from [lo, hi]
// inclusive.
struct FieldModifier {
    enum class Kind { RandomUniform, WrappingCounter };

    Kind kind = Kind::WrappingCounter;
    std::string field;
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;

    std::uint64_t next_value(Rng& rng);

private:
    std::uint64_t counter_ = 0;
    bool primed_ = false;
};

void apply_modifier(BufBatch& batch, FieldModifier& mod, Rng& rng);

} // namespace mgsim::packet
