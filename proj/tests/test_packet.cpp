#include <doctest.h>

#include <map>

#include "mgsim/packet/checksums.hpp"
#include "mgsim/packet/modifier.hpp"
#include "mgsim/packet/template.hpp"
#include "oracles.hpp"

using namespace mgsim;
using namespace mgsim::packet;

namespace {

PacketTemplate udp_template(std::size_t len) {
    PacketTemplate t;
    t.protocol_stack = {Proto::Ethernet, Proto::IPv4, Proto::Udp};
    t.pkt_length = len;
    return t;
}

} // namespace

TEST_CASE("make_template fills defaults into the right octets") {
    PacketTemplate t = udp_template(124);
    t.defaults = {{"udpDst", "42"}};
    const PacketBuffer buf = make_template(t);
    REQUIRE(buf.bytes.size() == 124);
    CHECK(buf.frame_len == 124);
    CHECK(buf.crc_valid);
    // UDP dst port sits at 14 + 20 + 2
    CHECK(buf.bytes[36] == 0x00);
    CHECK(buf.bytes[37] == 0x2A);
    // checksums unset
    CHECK(buf.get("ip4.checksum") == 0);
    CHECK(buf.get("udp.checksum") == 0);
}

TEST_CASE("make_template zeroes everything in an Ethernet-only frame") {
    PacketTemplate t;
    t.protocol_stack = {Proto::Ethernet};
    t.pkt_length = 60;
    const PacketBuffer buf = make_template(t);
    REQUIRE(buf.bytes.size() == 60);
    for (std::uint8_t b : buf.bytes) CHECK(b == 0);
}

TEST_CASE("make_template encodes dotted IPv4 addresses") {
    PacketTemplate t = udp_template(60);
    t.defaults = {{"ipDst", "192.168.1.1"}};
    const PacketBuffer buf = make_template(t);
    // IPv4 dst at 14 + 16
    CHECK(buf.bytes[30] == 0xC0);
    CHECK(buf.bytes[31] == 0xA8);
    CHECK(buf.bytes[32] == 0x01);
    CHECK(buf.bytes[33] == 0x01);
}

TEST_CASE("make_template rejects bad inputs") {
    PacketTemplate t = udp_template(124);
    t.defaults = {{"tcp.window", "1"}};
    CHECK_THROWS_AS(make_template(t), Error);
    try {
        make_template(t);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::UnknownField);
    }

    PacketTemplate small = udp_template(42);
    CHECK_THROWS_AS(make_template(small), Error);  // below the 60-byte minimum
    PacketTemplate big = udp_template(1515);
    CHECK_THROWS_AS(make_template(big), Error);
}

TEST_CASE("alloc_batch copies are independent with fresh seq ids") {
    BufferPool pool(make_template(udp_template(124)));

    BufBatch batch = pool.alloc_batch(64, 124);
    REQUIRE(batch.count() == 64);
    std::map<std::uint64_t, int> seqs;
    for (const auto& b : batch) {
        CHECK(b.bytes == batch[0].bytes);
        ++seqs[b.seq_id];
    }
    CHECK(seqs.size() == 64);

    BufBatch empty = pool.alloc_batch(0, 124);
    CHECK(empty.count() == 0);

    BufBatch two = pool.alloc_batch(2, 60);
    two[0].bytes[50] = 0xEE;
    CHECK(two[1].bytes[50] == 0x00);

    // strictly increasing across allocations from one pool
    std::uint64_t prev = 0;
    bool first = true;
    for (const auto& b : two) {
        if (!first) CHECK(b.seq_id > prev);
        prev = b.seq_id;
        first = false;
    }
    CHECK(two[0].seq_id >= 64);

    CHECK_THROWS_AS(pool.alloc_batch(65, 124), Error);
}

TEST_CASE("wrapping counter walks the range with exact period") {
    BufferPool pool(make_template(udp_template(60)));
    Rng rng(1);
    FieldModifier mod;
    mod.kind = FieldModifier::Kind::WrappingCounter;
    mod.field = "ip4.src";
    mod.lo = parse_field_u64("10.0.0.1");
    mod.hi = parse_field_u64("10.0.0.3");

    BufBatch batch = pool.alloc_batch(5, 60);
    apply_modifier(batch, mod, rng);
    const std::uint64_t base = parse_field_u64("10.0.0.1");
    CHECK(batch[0].get("ip4.src") == base);
    CHECK(batch[1].get("ip4.src") == base + 1);
    CHECK(batch[2].get("ip4.src") == base + 2);
    CHECK(batch[3].get("ip4.src") == base);      // wraps
    CHECK(batch[4].get("ip4.src") == base + 1);  // state persists

    // period is exactly the range length
    FieldModifier m2 = mod;
    m2.lo = 5;
    m2.hi = 11;
    BufBatch b2 = pool.alloc_batch(14, 60);
    apply_modifier(b2, m2, rng);
    for (std::size_t i = 0; i < 7; ++i)
        CHECK(b2[i].get("ip4.src") == b2[i + 7].get("ip4.src"));
    std::map<std::uint64_t, int> seen;
    for (std::size_t i = 0; i < 7; ++i) ++seen[b2[i].get("ip4.src")];
    CHECK(seen.size() == 7);
}

TEST_CASE("random uniform modifier stays in range and covers it evenly") {
    BufferPool pool(make_template(udp_template(60)), 128);
    Rng rng(42);

    FieldModifier degenerate;
    degenerate.kind = FieldModifier::Kind::RandomUniform;
    degenerate.field = "udp.srcPort";
    degenerate.lo = 1234;
    degenerate.hi = 1234;
    BufBatch batch = pool.alloc_batch(16, 60);
    apply_modifier(batch, degenerate, rng);
    for (const auto& b : batch) CHECK(b.get("udp.srcPort") == 1234);

    // chi-square style bound: every address within 5 sigma of uniform
    FieldModifier uni;
    uni.kind = FieldModifier::Kind::RandomUniform;
    uni.field = "ip4.src";
    uni.lo = parse_field_u64("10.0.0.0");
    uni.hi = uni.lo + 255;
    std::map<std::uint64_t, std::uint64_t> freq;
    const int kPackets = 100'000;
    for (int i = 0; i < kPackets / 100; ++i) {
        BufBatch chunk = pool.alloc_batch(100, 60);
        apply_modifier(chunk, uni, rng);
        for (const auto& b : chunk) ++freq[b.get("ip4.src")];
    }
    const double expected = kPackets / 256.0;
    const double sigma = std::sqrt(kPackets * (1.0 / 256) * (255.0 / 256));
    CHECK(freq.size() == 256);
    for (const auto& [addr, n] : freq) {
        CHECK(static_cast<double>(n) > expected - 5 * sigma);
        CHECK(static_cast<double>(n) < expected + 5 * sigma);
    }
}

TEST_CASE("ipv4 checksum basics") {
    std::vector<std::uint8_t> zero(20, 0);
    CHECK(ipv4_checksum(zero) == 0xFFFF);

    std::vector<std::uint8_t> odd(19, 0);
    CHECK_THROWS_AS(ipv4_checksum(odd), Error);

    Rng rng(23);
    for (int i = 0; i < 10'000; ++i) {
        std::vector<std::uint8_t> hdr(20);
        for (auto& b : hdr) b = static_cast<std::uint8_t>(rng.uniform_u64(0, 255));
        hdr[10] = hdr[11] = 0;
        const std::uint16_t ck = ipv4_checksum(hdr);
        CHECK(ck == oracles::naive_internet_checksum(hdr));
        // self-check: verifying a header containing its checksum sums to 0xFFFF
        hdr[10] = static_cast<std::uint8_t>(ck >> 8);
        hdr[11] = static_cast<std::uint8_t>(ck);
        CHECK(oracles::naive_internet_sum(hdr) == 0xFFFF);
    }
}

TEST_CASE("l4 checksum against the oracle and its self-check") {
    // UDP with zero payload, zero addresses and ports, only lengths set
    PacketTemplate t = udp_template(60);
    PacketBuffer buf = make_template(t);
    buf.set("ip4.length", 0);   // strip the structural defaults for the base case
    buf.set("ip4.ttl", 0);
    buf.set("ip4.protocol", 0);
    buf.bytes[14] = 0;          // version/IHL
    for (std::size_t i = 34; i < 60; ++i) buf.bytes[i] = 0;
    buf.set("udp.length", 8);
    buf.bytes.resize(42);       // exactly eth + ip4 + udp header
    buf.frame_len = 42;

    const std::uint16_t ck = l4_checksum(buf, Proto::Udp);
    // oracle: pseudo header (proto 17, len 8) + zeroed 8-byte UDP header
    std::vector<std::uint8_t> span{0, 0, 0, 0, 0, 0, 0, 0, 0, 17, 0, 8,
                                   0, 0, 0, 0, 0, 8, 0, 0};
    CHECK(ck == oracles::naive_internet_checksum(span));
    CHECK(ck == 0xFFDE);

    // realistic packet: flipping one payload bit changes the checksum
    PacketTemplate t2 = udp_template(124);
    t2.defaults = {{"ipSrc", "10.0.0.1"}, {"ipDst", "192.168.1.1"},
                   {"udpSrc", "1234"}, {"udpDst", "319"}};
    PacketBuffer b2 = make_template(t2);
    const std::uint16_t before = l4_checksum(b2, Proto::Udp);
    b2.bytes[100] ^= 0x01;
    CHECK(l4_checksum(b2, Proto::Udp) != before);
    b2.bytes[100] ^= 0x01;

    // write-back then verify over the same span including the checksum
    b2.set("udp.checksum", before);
    std::vector<std::uint8_t> verify;
    verify.insert(verify.end(), b2.bytes.begin() + 26, b2.bytes.begin() + 34);  // src+dst
    verify.push_back(0);
    verify.push_back(17);
    verify.push_back(static_cast<std::uint8_t>((124 - 34) >> 8));
    verify.push_back(static_cast<std::uint8_t>(124 - 34));
    verify.insert(verify.end(), b2.bytes.begin() + 34, b2.bytes.end());
    CHECK(oracles::naive_internet_sum(verify) == 0xFFFF);

    // missing layer
    PacketTemplate eth_only;
    eth_only.protocol_stack = {Proto::Ethernet};
    eth_only.pkt_length = 60;
    const PacketBuffer b3 = make_template(eth_only);
    CHECK_THROWS_AS(l4_checksum(b3, Proto::Udp), Error);
}

TEST_CASE("l4 checksum over IPv6 matches the oracle") {
    PacketTemplate t;
    t.protocol_stack = {Proto::Ethernet, Proto::IPv6, Proto::Udp};
    t.pkt_length = 70;
    t.defaults = {{"ip6.src", "fe80::1"}, {"ip6.dst", "fe80::2"}, {"udp.dstPort", "319"}};
    PacketBuffer buf = make_template(t);

    const std::uint16_t ck = l4_checksum(buf, Proto::Udp);
    std::vector<std::uint8_t> span;
    span.insert(span.end(), buf.bytes.begin() + 22, buf.bytes.begin() + 54);  // src+dst
    const std::size_t l4len = 70 - 54;
    span.push_back(0); span.push_back(0);
    span.push_back(static_cast<std::uint8_t>(l4len >> 8));
    span.push_back(static_cast<std::uint8_t>(l4len));
    span.push_back(0); span.push_back(0); span.push_back(0);
    span.push_back(17);
    span.insert(span.end(), buf.bytes.begin() + 54, buf.bytes.end());
    CHECK(ck == oracles::naive_internet_checksum(span));
}

TEST_CASE("materialize appends the FCS and honors crc_valid") {
    PacketBuffer buf = make_template(udp_template(60));

    const auto good = materialize(buf);
    REQUIRE(good.size() == 64);
    const std::uint32_t fcs = crc32_fcs({good.data(), 60});
    CHECK(good[60] == static_cast<std::uint8_t>(fcs));
    CHECK(good[63] == static_cast<std::uint8_t>(fcs >> 24));
    CHECK(fcs_ok(good));

    buf.crc_valid = false;
    const auto bad = materialize(buf);
    const std::uint32_t inv = ~fcs;
    CHECK(bad[60] == static_cast<std::uint8_t>(inv));
    CHECK_FALSE(fcs_ok(bad));
}

TEST_CASE("materialize with crc_valid=false never verifies") {
    Rng rng(31);
    BufferPool pool(make_template(udp_template(124)), 32);
    FieldModifier uni;
    uni.kind = FieldModifier::Kind::RandomUniform;
    uni.field = "ip4.src";
    uni.lo = 0;
    uni.hi = UINT32_MAX;
    for (int round = 0; round < 20; ++round) {
        BufBatch batch = pool.alloc_batch(32, 124);
        apply_modifier(batch, uni, rng);
        for (auto& b : batch) {
            b.crc_valid = false;
            CHECK_FALSE(fcs_ok(materialize(b)));
        }
    }
}

TEST_CASE("materialize applies offloaded checksums") {
    PacketTemplate t = udp_template(124);
    t.defaults = {{"ipSrc", "10.0.0.1"}, {"ipDst", "10.0.0.2"}, {"udpDst", "53"}};
    PacketBuffer buf = make_template(t);
    buf.offload = kOffloadIPv4 | kOffloadUdp;

    const auto out = materialize(buf);
    // IPv4 header verifies
    std::vector<std::uint8_t> ip_hdr(out.begin() + 14, out.begin() + 34);
    CHECK(oracles::naive_internet_sum(ip_hdr) == 0xFFFF);
    CHECK_FALSE((out[24] == 0 && out[25] == 0));
    // UDP checksum over pseudo header verifies
    std::vector<std::uint8_t> verify;
    verify.insert(verify.end(), out.begin() + 26, out.begin() + 34);
    verify.push_back(0);
    verify.push_back(17);
    verify.push_back(static_cast<std::uint8_t>((124 - 34) >> 8));
    verify.push_back(static_cast<std::uint8_t>(124 - 34));
    verify.insert(verify.end(), out.begin() + 34, out.begin() + 124);
    CHECK(oracles::naive_internet_sum(verify) == 0xFFFF);
}
