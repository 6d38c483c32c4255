#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "mgsim/packet/protocol.hpp"

namespace mgsim::packet {

enum Offload : std::uint8_t {
    kOffloadIPv4 = 1,
    kOffloadUdp = 2,
    kOffloadTcp = 4,
};

// One frame plus its transmit metadata. Bytes exclude preamble/SFD/IFG and
// the FCS; materialize() appends the FCS. Buffers are single-owner values: a
// buffer handed to transmit is consumed and must not be touched afterwards.
struct PacketBuffer {
    std::vector<std::uint8_t> bytes;
    std::uint32_t frame_len = 0;       // == bytes.size()
    bool crc_valid = true;
    bool request_timestamp = false;
    std::uint8_t offload = 0;          // Offload bits
    std::uint64_t seq_id = 0;
    std::shared_ptr<const StackLayout> layout;

    FieldRef field(std::string_view name) const;
    std::uint64_t get(std::string_view name) const;
    void set(std::string_view name, std::uint64_t value);
};

// Fixed-capacity batch of buffers; iteration visits exactly count() buffers.
class BufBatch {
public:
    explicit BufBatch(std::size_t capacity = 64);

    std::size_t capacity() const { return capacity_; }
    std::size_t count() const { return bufs_.size(); }

    PacketBuffer& operator[](std::size_t i) { return bufs_[i]; }
    const PacketBuffer& operator[](std::size_t i) const { return bufs_[i]; }

    auto begin() { return bufs_.begin(); }
    auto end() { return bufs_.end(); }
    auto begin() const { return bufs_.begin(); }
    auto end() const { return bufs_.end(); }

    void push(PacketBuffer buf);       // throws CapacityExceeded
    PacketBuffer take(std::size_t i);  // move a buffer out (consumes it)
    void clear() { bufs_.clear(); }

private:
    std::size_t capacity_;
    std::vector<PacketBuffer> bufs_;
};

// Allocates prototype copies with strictly increasing seq_ids.
class BufferPool {
public:
    explicit BufferPool(PacketBuffer prototype, std::size_t batch_capacity = 64);

    // n independent copies of the prototype truncated/padded to `size` bytes.
    BufBatch alloc_batch(std::size_t n, std::size_t size);
    PacketBuffer alloc(std::size_t size);

    std::uint64_t allocated() const { return next_seq_; }
    const PacketBuffer& prototype() const { return proto_; }

private:
    PacketBuffer proto_;
    std::size_t batch_capacity_;
    std::uint64_t next_seq_ = 0;
};

} // namespace mgsim::packet
