#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kadconn/node_id.hpp"

namespace kadconn {

// A known peer: its id, an opaque simulator handle, and when it was last seen.
struct Contact {
    NodeId id;
    std::uint32_t address = 0;
    std::int64_t last_seen = 0;
};

// One k-bucket. `entries` is ordered least-recently-seen first; `replacements`
// caches candidates that did not fit, same ordering, capped at k.
struct KBucket {
    std::vector<Contact> entries;
    std::vector<Contact> replacements;
};

enum class UpdateOutcome { inserted, refreshed, cached };

// Per-node routing table: `bits` buckets, where a contact with id c lives in
// bucket i iff 2^i <= dist(owner, c) < 2^(i+1).
class RoutingTable {
public:
    RoutingTable(const NodeId& owner, const KademliaParams& params);

    const NodeId& owner() const { return owner_; }

    // Insert or refresh a contact. Full buckets push the contact into the
    // replacement list instead, evicting the least-recently-seen candidate.
    UpdateOutcome update(const Contact& contact, std::int64_t now);

    struct EvictResult {
        bool removed = false;
        std::optional<Contact> promoted;
    };

    // Drop a stale contact from its bucket and promote the most recently seen
    // replacement candidate, if any. Ids not present are a no-op.
    EvictResult evict_stale(const NodeId& stale);

    // Up to `count` contacts from the whole table, ascending XOR distance to
    // `target`.
    std::vector<Contact> closest_contacts(const NodeId& target, std::size_t count) const;

    bool contains(const NodeId& id) const;
    std::size_t contact_count() const;
    bool empty() const { return contact_count() == 0; }

    const std::vector<KBucket>& buckets() const { return buckets_; }

    // All bucket entries in bucket order (replacement candidates excluded);
    // this is the flattened table a snapshot records.
    std::vector<NodeId> flatten() const;

    // Verifies bucket placement, size caps and id uniqueness. Test support.
    void check_invariants() const;

private:
    NodeId owner_;
    KademliaParams params_;
    std::vector<KBucket> buckets_;
};

}  // namespace kadconn
