#include "mgsim/packet/modifier.hpp"

namespace mgsim::packet {

std::uint64_t FieldModifier::next_value(Rng& rng) {
    if (kind == Kind::RandomUniform)
        return rng.uniform_u64(lo, hi);
    if (!primed_) {
        counter_ = lo;
        primed_ = true;
    }
    const std::uint64_t v = counter_;
    counter_ = (counter_ == hi) ? lo : counter_ + 1;
    return v;
}

void apply_modifier(BufBatch& batch, FieldModifier& mod, Rng& rng) {
    if (batch.count() == 0) return;
    // Resolve once; all buffers in a batch share the prototype's stack.
    const FieldRef ref = batch[0].field(mod.field);
    for (PacketBuffer& buf : batch)
        write_field(buf.bytes, ref, mod.next_value(rng));
}

} // namespace mgsim::packet
