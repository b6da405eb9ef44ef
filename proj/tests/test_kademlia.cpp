#include "doctest.h"

#include <random>
#include <stdexcept>

#include "kadconn/node_id.hpp"
#include "kadconn/routing_table.hpp"

using namespace kadconn;

namespace {

Contact contact(std::uint64_t value, std::int64_t seen = 0) {
    return Contact{NodeId::from_u64(value), static_cast<std::uint32_t>(value), seen};
}

}  // namespace

TEST_CASE("xor distance") {
    CHECK(xor_distance(NodeId::from_u64(0b0101), NodeId::from_u64(0b0011)) ==
          NodeId::from_u64(6));
    NodeId x = NodeId::from_u64(0xdeadbeef);
    CHECK(xor_distance(x, x).is_zero());
    CHECK(xor_distance(x, NodeId::from_u64(0)) == x);

    NodeId top;  // 2^(b-1) for b = 160
    top.w[2] = std::uint64_t{1} << 31;
    CHECK(xor_distance(NodeId{}, top) == top);
    CHECK(msb_index(top) == 159);
}

TEST_CASE("distance ordering compares most significant limbs first") {
    NodeId small = NodeId::from_u64(~std::uint64_t{0});
    NodeId large;
    large.w[1] = 1;
    CHECK(small < large);
    CHECK(large > small);
    CHECK(small <= small);
}

TEST_CASE("bucket index brackets the distance") {
    NodeId owner = NodeId::from_u64(0);
    CHECK(bucket_index(owner, NodeId::from_u64(1)) == 0);
    CHECK(bucket_index(owner, NodeId::from_u64(5)) == 2);

    NodeId far;
    far.w[2] = std::uint64_t{1} << 31;  // bit 159: top half of a 160-bit space
    CHECK(bucket_index(owner, far) == 159);
    CHECK_THROWS_AS(bucket_index(owner, owner), std::invalid_argument);
}

TEST_CASE("hex round-trip") {
    KademliaParams params;  // 160 bits
    NodeId id;
    id.w[0] = 0x0123456789abcdefull;
    id.w[1] = 0xfedcba9876543210ull;
    id.w[2] = 0x9abcdef0ull;
    const std::string hex = to_hex(id, params.bits);
    CHECK(hex.size() == 40);
    CHECK(from_hex(hex, params.bits) == id);

    CHECK(to_hex(NodeId::from_u64(0x2a), 32) == "0000002a");
    CHECK(from_hex("0000002a", 32) == NodeId::from_u64(0x2a));
    CHECK_THROWS_AS(from_hex("zz", 8), std::invalid_argument);
    CHECK_THROWS_AS(from_hex("0a", 32), std::invalid_argument);
}

TEST_CASE("params validation") {
    CHECK_NOTHROW(KademliaParams{}.validate());
    CHECK_THROWS_AS((KademliaParams{3, 20, 3}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((KademliaParams{160, 0, 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((KademliaParams{160, 2, 3}.validate()), std::invalid_argument);
}

TEST_CASE("table update inserts, refreshes and caches") {
    KademliaParams params{32, 2, 2};
    RoutingTable table(NodeId::from_u64(0), params);

    // distances 4..7 all land in bucket 2
    CHECK(table.update(contact(4), 10) == UpdateOutcome::inserted);
    CHECK(table.contact_count() == 1);
    CHECK(table.update(contact(5), 11) == UpdateOutcome::inserted);

    // bucket full: a third contact is cached, entries unchanged
    CHECK(table.update(contact(6), 12) == UpdateOutcome::cached);
    CHECK(table.contact_count() == 2);
    CHECK(table.contains(NodeId::from_u64(4)));
    CHECK_FALSE(table.contains(NodeId::from_u64(6)));

    // re-seen contact becomes most recently seen
    CHECK(table.update(contact(4), 13) == UpdateOutcome::refreshed);
    const KBucket& bucket = table.buckets()[2];
    REQUIRE(bucket.entries.size() == 2);
    CHECK(bucket.entries.back().id == NodeId::from_u64(4));
    CHECK(bucket.entries.back().last_seen == 13);
    table.check_invariants();
}

TEST_CASE("replacement list is LRU-capped") {
    KademliaParams params{32, 1, 1};
    RoutingTable table(NodeId::from_u64(0), params);
    table.update(contact(4), 0);
    table.update(contact(5), 1);  // cached
    table.update(contact(6), 2);  // cached, evicts 5 (k = 1)
    const KBucket& bucket = table.buckets()[2];
    REQUIRE(bucket.replacements.size() == 1);
    CHECK(bucket.replacements[0].id == NodeId::from_u64(6));
    table.check_invariants();
}

TEST_CASE("evicting a stale contact promotes the most recently seen candidate") {
    KademliaParams params{32, 2, 2};
    RoutingTable table(NodeId::from_u64(0), params);
    table.update(contact(4), 0);   // A
    table.update(contact(5), 1);   // B
    table.update(contact(7), 2);   // D cached
    table.update(contact(6), 3);   // C cached, newer

    auto result = table.evict_stale(NodeId::from_u64(4));
    CHECK(result.removed);
    REQUIRE(result.promoted.has_value());
    CHECK(result.promoted->id == NodeId::from_u64(6));
    CHECK(table.contains(NodeId::from_u64(5)));
    CHECK(table.contains(NodeId::from_u64(6)));
    table.check_invariants();
}

TEST_CASE("evicting without replacements just shrinks the bucket") {
    KademliaParams params{32, 2, 2};
    RoutingTable table(NodeId::from_u64(0), params);
    table.update(contact(4), 0);
    auto result = table.evict_stale(NodeId::from_u64(4));
    CHECK(result.removed);
    CHECK_FALSE(result.promoted.has_value());
    CHECK(table.contact_count() == 0);

    auto missing = table.evict_stale(NodeId::from_u64(9));
    CHECK_FALSE(missing.removed);
}

TEST_CASE("closest contacts are sorted by xor distance") {
    KademliaParams params{32, 20, 3};
    RoutingTable table(NodeId::from_u64(0), params);
    for (std::uint64_t v : {9, 200, 3, 77, 1024}) table.update(contact(v), 0);

    auto all = table.closest_contacts(NodeId::from_u64(8), 20);
    REQUIRE(all.size() == 5);
    CHECK(all[0].id == NodeId::from_u64(9));   // distance 1
    CHECK(all[1].id == NodeId::from_u64(3));   // distance 11

    auto nearest = table.closest_contacts(NodeId::from_u64(77), 1);
    REQUIRE(nearest.size() == 1);
    CHECK(nearest[0].id == NodeId::from_u64(77));  // distance 0 comes first

    CHECK(table.closest_contacts(NodeId::from_u64(4), 3).size() == 3);
    RoutingTable empty(NodeId::from_u64(0), params);
    CHECK(empty.closest_contacts(NodeId::from_u64(4), 3).empty());
}

TEST_CASE("bucket placement invariant holds under random update sequences") {
    KademliaParams params{16, 3, 3};
    RoutingTable table(NodeId::from_u64(0x1234 & 0xffff), params);
    std::mt19937_64 rng(7);
    for (int step = 0; step < 5000; ++step) {
        const std::uint64_t value = rng() & 0xffff;
        NodeId id = NodeId::from_u64(value);
        if (id == table.owner()) continue;
        if (rng() % 5 == 0) {
            table.evict_stale(id);
        } else {
            table.update(Contact{id, 0, static_cast<std::int64_t>(step)}, step);
        }
    }
    table.check_invariants();
    for (const KBucket& bucket : table.buckets())
        CHECK(bucket.entries.size() <= 3);
}

TEST_CASE("owner id is rejected") {
    KademliaParams params{32, 2, 2};
    RoutingTable table(NodeId::from_u64(42), params);
    CHECK_THROWS_AS(table.update(contact(42), 0), std::invalid_argument);
}
