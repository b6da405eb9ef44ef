#include "kadconn/routing_table.hpp"

#include <algorithm>
#include <stdexcept>

namespace kadconn {

namespace {

std::vector<Contact>::iterator find_id(std::vector<Contact>& v, const NodeId& id) {
    return std::find_if(v.begin(), v.end(), [&](const Contact& c) { return c.id == id; });
}

}  // namespace

RoutingTable::RoutingTable(const NodeId& owner, const KademliaParams& params)
    : owner_(owner), params_(params), buckets_(static_cast<std::size_t>(params.bits)) {
    params_.validate();
}

UpdateOutcome RoutingTable::update(const Contact& contact, std::int64_t now) {
    if (contact.id == owner_)
        throw std::invalid_argument("routing table: cannot store the owner id");
    KBucket& bucket = buckets_[static_cast<std::size_t>(bucket_index(owner_, contact.id))];

    if (auto it = find_id(bucket.entries, contact.id); it != bucket.entries.end()) {
        Contact refreshed = *it;
        refreshed.last_seen = now;
        bucket.entries.erase(it);
        bucket.entries.push_back(refreshed);
        return UpdateOutcome::refreshed;
    }

    if (bucket.entries.size() < static_cast<std::size_t>(params_.k)) {
        if (auto it = find_id(bucket.replacements, contact.id); it != bucket.replacements.end())
            bucket.replacements.erase(it);
        Contact fresh = contact;
        fresh.last_seen = now;
        bucket.entries.push_back(fresh);
        return UpdateOutcome::inserted;
    }

    // Bucket full: keep the contact as a replacement candidate, most recently
    // seen last, dropping the least-recently-seen candidate on overflow.
    if (auto it = find_id(bucket.replacements, contact.id); it != bucket.replacements.end())
        bucket.replacements.erase(it);
    Contact cached = contact;
    cached.last_seen = now;
    bucket.replacements.push_back(cached);
    if (bucket.replacements.size() > static_cast<std::size_t>(params_.k))
        bucket.replacements.erase(bucket.replacements.begin());
    return UpdateOutcome::cached;
}

RoutingTable::EvictResult RoutingTable::evict_stale(const NodeId& stale) {
    if (stale == owner_) return {};
    KBucket& bucket = buckets_[static_cast<std::size_t>(bucket_index(owner_, stale))];
    auto it = find_id(bucket.entries, stale);
    if (it == bucket.entries.end()) return {};
    bucket.entries.erase(it);

    EvictResult result;
    result.removed = true;
    if (!bucket.replacements.empty()) {
        Contact promoted = bucket.replacements.back();
        bucket.replacements.pop_back();
        bucket.entries.push_back(promoted);
        result.promoted = promoted;
    }
    return result;
}

std::vector<Contact> RoutingTable::closest_contacts(const NodeId& target,
                                                    std::size_t count) const {
    std::vector<Contact> all;
    all.reserve(contact_count());
    for (const KBucket& bucket : buckets_)
        all.insert(all.end(), bucket.entries.begin(), bucket.entries.end());

    const std::size_t take = std::min(count, all.size());
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(),
                      [&](const Contact& a, const Contact& b) {
                          return xor_distance(a.id, target) < xor_distance(b.id, target);
                      });
    all.resize(take);
    return all;
}

bool RoutingTable::contains(const NodeId& id) const {
    if (id == owner_) return false;
    const KBucket& bucket = buckets_[static_cast<std::size_t>(bucket_index(owner_, id))];
    return std::any_of(bucket.entries.begin(), bucket.entries.end(),
                       [&](const Contact& c) { return c.id == id; });
}

std::size_t RoutingTable::contact_count() const {
    std::size_t n = 0;
    for (const KBucket& bucket : buckets_) n += bucket.entries.size();
    return n;
}

std::vector<NodeId> RoutingTable::flatten() const {
    std::vector<NodeId> out;
    out.reserve(contact_count());
    for (const KBucket& bucket : buckets_)
        for (const Contact& c : bucket.entries) out.push_back(c.id);
    return out;
}

void RoutingTable::check_invariants() const {
    for (std::size_t i = 0; i < buckets_.size(); ++i) {
        const KBucket& bucket = buckets_[i];
        if (bucket.entries.size() > static_cast<std::size_t>(params_.k))
            throw std::logic_error("bucket entries exceed k");
        if (bucket.replacements.size() > static_cast<std::size_t>(params_.k))
            throw std::logic_error("bucket replacements exceed k");
        std::vector<NodeId> seen;
        for (const std::vector<Contact>* list : {&bucket.entries, &bucket.replacements}) {
            for (const Contact& c : *list) {
                if (c.id == owner_) throw std::logic_error("owner stored as contact");
                if (bucket_index(owner_, c.id) != static_cast<int>(i))
                    throw std::logic_error("contact in wrong bucket");
                if (std::find(seen.begin(), seen.end(), c.id) != seen.end())
                    throw std::logic_error("duplicate id within bucket");
                seen.push_back(c.id);
            }
        }
    }
}

}  // namespace kadconn
