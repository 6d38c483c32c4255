#include "mgsim/packet/buffer.hpp"

#include "mgsim/error.hpp"

namespace mgsim::packet {

FieldRef PacketBuffer::field(std::string_view name) const {
    if (!layout) raise(Errc::UnknownField, std::string(name) + " (buffer has no layout)");
    return layout->resolve(name);
}

std::uint64_t PacketBuffer::get(std::string_view name) const {
    return read_field(bytes, field(name));
}

void PacketBuffer::set(std::string_view name, std::uint64_t value) {
    write_field(bytes, field(name), value);
}

BufBatch::BufBatch(std::size_t capacity) : capacity_(capacity) {
    bufs_.reserve(capacity);
}

void BufBatch::push(PacketBuffer buf) {
    if (bufs_.size() >= capacity_)
        raise(Errc::CapacityExceeded, "batch capacity " + std::to_string(capacity_));
    bufs_.push_back(std::move(buf));
}

PacketBuffer BufBatch::take(std::size_t i) {
    PacketBuffer out = std::move(bufs_[i]);
    bufs_.erase(bufs_.begin() + static_cast<std::ptrdiff_t>(i));
    return out;
}

BufferPool::BufferPool(PacketBuffer prototype, std::size_t batch_capacity)
    : proto_(std::move(prototype)), batch_capacity_(batch_capacity) {}

PacketBuffer BufferPool::alloc(std::size_t size) {
    if (proto_.layout && size < proto_.layout->min_frame_len())
        raise(Errc::LengthTooSmall, "size below stack minimum");
    if (size > 1514)
        raise(Errc::LengthTooLarge, "size above 1514-byte standard frame");
    PacketBuffer b = proto_;
    b.bytes.resize(size, 0);
    b.frame_len = static_cast<std::uint32_t>(size);
    b.seq_id = next_seq_++;
    return b;
}

BufBatch BufferPool::alloc_batch(std::size_t n, std::size_t size) {
    if (n > batch_capacity_)
        raise(Errc::CapacityExceeded,
              std::to_string(n) + " > batch capacity " + std::to_string(batch_capacity_));
    BufBatch batch(batch_capacity_);
    for (std::size_t i = 0; i < n; ++i)
        batch.push(alloc(size));
    return batch;
}

} // namespace mgsim::packet
