#include "kadconn/simulator.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

#include "kadconn/rng.hpp"
#include "kadconn/routing_table.hpp"

namespace kadconn {

namespace {

constexpr std::int64_t kJoinSpacingMs = 180;
constexpr std::int64_t kMinuteMs = 60'000;

enum class MsgKind : std::uint8_t {
    ping,
    pong,
    find_node,
    find_node_reply,
    find_value,
    find_value_reply,
    store,
    store_ack,
};

bool is_request(MsgKind kind) {
    return kind == MsgKind::ping || kind == MsgKind::find_node ||
           kind == MsgKind::find_value || kind == MsgKind::store;
}

struct Message {
    MsgKind kind;
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    NodeId from_id;
    std::uint64_t rpc_id = 0;
    NodeId target;  // lookup target or object id
    std::vector<Contact> contacts;
    bool value_found = false;
};

enum class LookupMode : std::uint8_t { node, value, store };
enum class LookupPurpose : std::uint8_t { background, join };

enum class EntryState : std::uint8_t { fresh, inflight, responded, failed };

struct ShortlistEntry {
    Contact contact;
    EntryState state = EntryState::fresh;
};

struct Lookup {
    std::uint64_t id = 0;
    std::uint32_t issuer = 0;
    NodeId target;
    LookupMode mode = LookupMode::node;
    LookupPurpose purpose = LookupPurpose::background;
    std::vector<ShortlistEntry> shortlist;  // ascending XOR distance to target
    int inflight = 0;
    int responded = 0;
};

enum class RpcPurpose : std::uint8_t { lookup_query, join_ping, store_put };

struct PendingRpc {
    std::uint32_t issuer = 0;
    Contact dest;
    MsgKind kind = MsgKind::ping;
    NodeId target;
    std::uint64_t lookup_id = 0;
    RpcPurpose purpose = RpcPurpose::lookup_query;
    int attempt = 1;
};

struct Node {
    NodeId id;
    std::uint32_t handle = 0;
    bool alive = false;
    std::int64_t joined_at = 0;
    RoutingTable table;
    std::set<NodeId> storage;

    Node(const NodeId& node_id, std::uint32_t node_handle, const KademliaParams& params,
         std::int64_t now)
        : id(node_id), handle(node_handle), joined_at(now), table(node_id, params) {}
};

struct Event {
    enum class Kind : std::uint8_t {
        deliver,
        rpc_timeout,
        join,
        churn_tick,
        traffic_tick,
        traffic_op,
        refresh_tick,
        snapshot,
    };

    std::int64_t time = 0;
    std::uint64_t seq = 0;
    Kind kind = Kind::join;

    Message message;           // deliver
    std::uint64_t rpc_id = 0;  // rpc_timeout
    int attempt = 0;           // rpc_timeout
    std::uint32_t node = 0;    // traffic_op / refresh_tick
    bool store_op = false;     // traffic_op
};

struct EventOrder {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        return a.seq > b.seq;
    }
};

class Engine {
public:
    Engine(const ScenarioConfig& config, int pass_index)
        : cfg_(config),
          pass_(pass_index),
          rng_(pass_seed(config.seed, pass_index)),
          duration_ms_(static_cast<std::int64_t>(config.duration_min) * kMinuteMs),
          bootstrap_end_(static_cast<std::int64_t>(config.network_size) * kJoinSpacingMs) {}

    PassResult run() {
        schedule_initial_events();
        while (!queue_.empty() && !stopped_) {
            const Event event = queue_.top();
            queue_.pop();
            if (event.time > duration_ms_) break;
            assert(event.time >= now_);
            now_ = event.time;
            dispatch(event);
        }

        PassResult result;
        result.pass_index = pass_;
        result.seed = pass_seed(cfg_.seed, pass_);
        result.snapshots = std::move(snapshots_);
        result.stats = stats_;
        result.joins = std::move(joins_);
        result.end_time_ms = now_;
        result.live_at_end = live_count_;
        return result;
    }

private:
    // --- scheduling -------------------------------------------------------

    void schedule(Event event, std::int64_t at) {
        event.time = at;
        event.seq = next_seq_++;
        queue_.push(std::move(event));
    }

    void schedule_initial_events() {
        for (int i = 0; i < cfg_.network_size; ++i) {
            Event e;
            e.kind = Event::Kind::join;
            schedule(std::move(e), static_cast<std::int64_t>(i) * kJoinSpacingMs);
        }

        // one snapshot immediately after bootstrap, then the periodic series
        Event boot;
        boot.kind = Event::Kind::snapshot;
        schedule(std::move(boot), bootstrap_end_);
        const std::int64_t period = static_cast<std::int64_t>(cfg_.snapshot_period_min) * kMinuteMs;
        for (std::int64_t t = period; t <= duration_ms_; t += period) {
            Event e;
            e.kind = Event::Kind::snapshot;
            schedule(std::move(e), t);
        }

        if (cfg_.churn.any()) {
            const std::int64_t cycle =
                static_cast<std::int64_t>(cfg_.churn.cycle_minutes) * kMinuteMs;
            for (std::int64_t t = bootstrap_end_ + cycle; t <= duration_ms_; t += cycle) {
                Event e;
                e.kind = Event::Kind::churn_tick;
                schedule(std::move(e), t);
            }
        }

        if (cfg_.traffic) {
            for (std::int64_t t = bootstrap_end_; t < duration_ms_; t += kMinuteMs) {
                Event e;
                e.kind = Event::Kind::traffic_tick;
                schedule(std::move(e), t);
            }
        }
    }

    void dispatch(const Event& event) {
        switch (event.kind) {
            case Event::Kind::deliver: on_deliver(event.message); break;
            case Event::Kind::rpc_timeout: on_rpc_timeout(event.rpc_id, event.attempt); break;
            case Event::Kind::join: do_join(); break;
            case Event::Kind::churn_tick: on_churn_tick(); break;
            case Event::Kind::traffic_tick: on_traffic_tick(); break;
            case Event::Kind::traffic_op: on_traffic_op(event.node, event.store_op); break;
            case Event::Kind::refresh_tick: on_refresh_tick(event.node); break;
            case Event::Kind::snapshot: capture_snapshot(); break;
        }
    }

    std::int64_t latency() {
        return rng_.range(cfg_.latency_min_ms, cfg_.latency_max_ms);
    }

    // --- node lifecycle ---------------------------------------------------

    NodeId fresh_node_id() {
        for (;;) {
            NodeId id;
            for (auto& limb : id.w) limb = rng_.next();
            id = mask_to_bits(id, cfg_.params.bits);
            if (!id_to_handle_.contains(id)) return id;
        }
    }

    std::vector<std::uint32_t> live_handles() const {
        std::vector<std::uint32_t> out;
        out.reserve(static_cast<std::size_t>(live_count_));
        for (const Node& node : nodes_)
            if (node.alive) out.push_back(node.handle);
        return out;
    }

    void do_join() {
        // choose the bootstrap node before the joiner becomes visible
        std::int32_t bootstrap = -1;
        if (cfg_.setup == SetupKind::B && !stable_.empty()) {
            bootstrap = static_cast<std::int32_t>(
                stable_[rng_.below(stable_.size())]);
        } else {
            const std::vector<std::uint32_t> live = live_handles();
            if (!live.empty())
                bootstrap = static_cast<std::int32_t>(live[rng_.below(live.size())]);
        }

        const NodeId id = fresh_node_id();
        const auto handle = static_cast<std::uint32_t>(nodes_.size());
        nodes_.emplace_back(id, handle, cfg_.params, now_);
        nodes_.back().alive = true;
        ++live_count_;
        id_to_handle_.emplace(id, handle);
        joins_.push_back({handle, bootstrap, now_});

        if (cfg_.setup != SetupKind::R &&
            static_cast<int>(stable_.size()) < cfg_.stable_count)
            stable_.push_back(handle);

        const std::int64_t first_refresh =
            now_ + static_cast<std::int64_t>(cfg_.refresh_period_min) * kMinuteMs;
        if (first_refresh <= duration_ms_) {
            Event e;
            e.kind = Event::Kind::refresh_tick;
            e.node = handle;
            schedule(std::move(e), first_refresh);
        }

        if (bootstrap < 0) return;  // seed node: nothing to contact yet

        const Node& boot_node = nodes_[static_cast<std::uint32_t>(bootstrap)];
        const Contact boot_contact{boot_node.id, boot_node.handle, now_};
        nodes_[handle].table.update(boot_contact, now_);
        // liveness ping first; the self-lookup starts once it is answered
        send_rpc(handle, boot_contact, MsgKind::ping, NodeId{}, RpcPurpose::join_ping, 0);
    }

    void remove_node(std::uint32_t handle) {
        Node& node = nodes_[handle];
        if (!node.alive) return;
        node.alive = false;
        --live_count_;
        ++stats_.removals;
    }

    // --- rpc layer --------------------------------------------------------

    void send_rpc(std::uint32_t issuer, const Contact& dest, MsgKind kind, const NodeId& target,
                  RpcPurpose purpose, std::uint64_t lookup_id) {
        const std::uint64_t rpc_id = next_rpc_id_++;
        PendingRpc rpc;
        rpc.issuer = issuer;
        rpc.dest = dest;
        rpc.kind = kind;
        rpc.target = target;
        rpc.lookup_id = lookup_id;
        rpc.purpose = purpose;
        rpc.attempt = 1;
        pending_.emplace(rpc_id, rpc);
        transmit_request(rpc_id, pending_.at(rpc_id));
    }

    void transmit_request(std::uint64_t rpc_id, const PendingRpc& rpc) {
        Event deliver;
        deliver.kind = Event::Kind::deliver;
        deliver.message.kind = rpc.kind;
        deliver.message.from = rpc.issuer;
        deliver.message.to = rpc.dest.address;
        deliver.message.from_id = nodes_[rpc.issuer].id;
        deliver.message.rpc_id = rpc_id;
        deliver.message.target = rpc.target;
        schedule(std::move(deliver), now_ + latency());

        Event timeout;
        timeout.kind = Event::Kind::rpc_timeout;
        timeout.rpc_id = rpc_id;
        timeout.attempt = rpc.attempt;
        schedule(std::move(timeout), now_ + cfg_.rpc_timeout_ms);
    }

    void send_reply(const Node& from, const Message& request, MsgKind kind,
                    std::vector<Contact> contacts = {}, bool value_found = false) {
        Event deliver;
        deliver.kind = Event::Kind::deliver;
        deliver.message.kind = kind;
        deliver.message.from = from.handle;
        deliver.message.to = request.from;
        deliver.message.from_id = from.id;
        deliver.message.rpc_id = request.rpc_id;
        deliver.message.target = request.target;
        deliver.message.contacts = std::move(contacts);
        deliver.message.value_found = value_found;
        schedule(std::move(deliver), now_ + latency());
    }

    void on_rpc_timeout(std::uint64_t rpc_id, int attempt) {
        auto it = pending_.find(rpc_id);
        if (it == pending_.end()) return;       // answered in time
        PendingRpc& rpc = it->second;
        if (rpc.attempt != attempt) return;     // this timeout was superseded by a resend
        if (!nodes_[rpc.issuer].alive) {
            pending_.erase(it);
            return;
        }

        if (rpc.attempt <= cfg_.rpc_retries) {
            ++rpc.attempt;
            transmit_request(rpc_id, rpc);
            return;
        }

        // all attempts exhausted: the contact is stale
        const PendingRpc failed = rpc;
        pending_.erase(it);
        ++stats_.rpc_failures;
        Node& issuer = nodes_[failed.issuer];
        if (issuer.table.evict_stale(failed.dest.id).removed) ++stats_.evictions;

        switch (failed.purpose) {
            case RpcPurpose::join_ping:
                ++stats_.join_failures;
                break;
            case RpcPurpose::store_put:
                break;
            case RpcPurpose::lookup_query:
                if (auto lk = lookups_.find(failed.lookup_id); lk != lookups_.end()) {
                    mark_entry(lk->second, failed.dest.id, EntryState::failed);
                    --lk->second.inflight;
                    step_lookup(failed.lookup_id);
                }
                break;
        }
    }

    // --- message handling -------------------------------------------------

    void on_deliver(const Message& msg) {
        Node& node = nodes_[msg.to];
        if (!node.alive) return;  // crashed nodes stay silent
        ++stats_.messages_delivered;

        // every exchange teaches the receiver about the sender
        node.table.update(Contact{msg.from_id, msg.from, now_}, now_);

        if (is_request(msg.kind)) {
            switch (msg.kind) {
                case MsgKind::ping:
                    send_reply(node, msg, MsgKind::pong);
                    break;
                case MsgKind::find_node:
                    send_reply(node, msg, MsgKind::find_node_reply,
                               node.table.closest_contacts(msg.target,
                                                           static_cast<std::size_t>(cfg_.params.k)));
                    break;
                case MsgKind::find_value: {
                    const bool found = node.storage.contains(msg.target);
                    send_reply(node, msg, MsgKind::find_value_reply,
                               node.table.closest_contacts(msg.target,
                                                           static_cast<std::size_t>(cfg_.params.k)),
                               found);
                    break;
                }
                case MsgKind::store:
                    node.storage.insert(msg.target);
                    ++stats_.stores_delivered;
                    send_reply(node, msg, MsgKind::store_ack);
                    break;
                default: break;
            }
            return;
        }

        handle_reply(node, msg);
    }

    void merge_into_table(Node& node, const std::vector<Contact>& contacts) {
        for (const Contact& c : contacts) {
            if (c.id == node.id) continue;
            node.table.update(Contact{c.id, c.address, now_}, now_);
        }
    }

    void handle_reply(Node& node, const Message& msg) {
        merge_into_table(node, msg.contacts);

        auto it = pending_.find(msg.rpc_id);
        if (it == pending_.end() || it->second.issuer != node.handle) return;  // late reply
        const PendingRpc rpc = it->second;
        pending_.erase(it);

        switch (rpc.purpose) {
            case RpcPurpose::join_ping:
                start_lookup(node.handle, node.id, LookupMode::node, LookupPurpose::join);
                break;
            case RpcPurpose::store_put:
                break;
            case RpcPurpose::lookup_query: {
                auto lk = lookups_.find(rpc.lookup_id);
                if (lk == lookups_.end()) break;  // lookup already finished
                Lookup& lookup = lk->second;
                mark_entry(lookup, msg.from_id, EntryState::responded);
                --lookup.inflight;
                ++lookup.responded;
                merge_into_shortlist(lookup, msg.contacts);
                if (lookup.mode == LookupMode::value && msg.value_found) {
                    finish_lookup(rpc.lookup_id);
                } else if (lookup.responded >= cfg_.params.k) {
                    finish_lookup(rpc.lookup_id);
                } else {
                    step_lookup(rpc.lookup_id);
                }
                break;
            }
        }
    }

    // --- iterative lookup -------------------------------------------------

    std::uint64_t start_lookup(std::uint32_t issuer, const NodeId& target, LookupMode mode,
                               LookupPurpose purpose) {
        Node& node = nodes_[issuer];
        const std::vector<Contact> seed =
            node.table.closest_contacts(target, static_cast<std::size_t>(cfg_.params.k));
        if (seed.empty()) {
            ++stats_.lookups_without_contacts;
            return 0;
        }
        ++stats_.lookups_started;

        Lookup lookup;
        lookup.id = next_lookup_id_++;
        lookup.issuer = issuer;
        lookup.target = target;
        lookup.mode = mode;
        lookup.purpose = purpose;
        lookup.shortlist.reserve(seed.size());
        for (const Contact& c : seed) lookup.shortlist.push_back({c, EntryState::fresh});

        const std::uint64_t id = lookup.id;
        lookups_.emplace(id, std::move(lookup));
        step_lookup(id);
        return id;
    }

    void mark_entry(Lookup& lookup, const NodeId& id, EntryState state) {
        for (ShortlistEntry& entry : lookup.shortlist) {
            if (entry.contact.id == id) {
                entry.state = state;
                return;
            }
        }
    }

    void merge_into_shortlist(Lookup& lookup, const std::vector<Contact>& contacts) {
        const Node& issuer = nodes_[lookup.issuer];
        for (const Contact& c : contacts) {
            if (c.id == issuer.id) continue;
            const NodeId dist = xor_distance(c.id, lookup.target);
            auto pos = std::lower_bound(lookup.shortlist.begin(), lookup.shortlist.end(), dist,
                                        [&](const ShortlistEntry& e, const NodeId& d) {
                                            return xor_distance(e.contact.id, lookup.target) < d;
                                        });
            if (pos != lookup.shortlist.end() && pos->contact.id == c.id) continue;
            lookup.shortlist.insert(pos, {c, EntryState::fresh});
        }
    }

    // Next query target: the closest fresh entry within the window of the k
    // closest non-failed entries. Beyond that window no progress is possible.
    ShortlistEntry* next_candidate(Lookup& lookup) {
        int window = 0;
        for (ShortlistEntry& entry : lookup.shortlist) {
            if (entry.state == EntryState::failed) continue;
            if (++window > cfg_.params.k) break;
            if (entry.state == EntryState::fresh) return &entry;
        }
        return nullptr;
    }

    void step_lookup(std::uint64_t lookup_id) {
        auto it = lookups_.find(lookup_id);
        if (it == lookups_.end()) return;
        Lookup& lookup = it->second;
        if (!nodes_[lookup.issuer].alive) {
            lookups_.erase(it);
            return;
        }

        while (lookup.inflight < cfg_.params.alpha) {
            ShortlistEntry* entry = next_candidate(lookup);
            if (entry == nullptr) break;
            entry->state = EntryState::inflight;
            ++lookup.inflight;
            send_rpc(lookup.issuer, entry->contact,
                     lookup.mode == LookupMode::value ? MsgKind::find_value : MsgKind::find_node,
                     lookup.target, RpcPurpose::lookup_query, lookup.id);
        }
        if (lookup.inflight == 0) finish_lookup(lookup_id);
    }

    void finish_lookup(std::uint64_t lookup_id) {
        auto it = lookups_.find(lookup_id);
        if (it == lookups_.end()) return;
        const Lookup lookup = std::move(it->second);
        lookups_.erase(it);
        ++stats_.lookups_completed;

        if (lookup.mode == LookupMode::store && nodes_[lookup.issuer].alive) {
            // disseminate the object to the k closest nodes that answered
            int sent = 0;
            for (const ShortlistEntry& entry : lookup.shortlist) {
                if (entry.state != EntryState::responded) continue;
                send_rpc(lookup.issuer, entry.contact, MsgKind::store, lookup.target,
                         RpcPurpose::store_put, 0);
                if (++sent >= cfg_.params.k) break;
            }
            disseminated_.push_back(lookup.target);
        }
    }

    // --- churn, traffic, refresh, snapshots --------------------------------

    void on_churn_tick() {
        std::vector<std::uint32_t> removable;
        for (const Node& node : nodes_) {
            if (!node.alive) continue;
            if (cfg_.setup != SetupKind::R &&
                std::find(stable_.begin(), stable_.end(), node.handle) != stable_.end())
                continue;
            removable.push_back(node.handle);
        }

        const std::size_t n_remove =
            std::min<std::size_t>(removable.size(),
                                  static_cast<std::size_t>(cfg_.churn.removals_per_cycle));
        // partial Fisher-Yates over the removable list
        for (std::size_t i = 0; i < n_remove; ++i) {
            const std::size_t j = i + rng_.below(removable.size() - i);
            std::swap(removable[i], removable[j]);
            remove_node(removable[i]);
        }

        for (int i = 0; i < cfg_.churn.joins_per_cycle; ++i) do_join();

        if (live_count_ < 2 || live_count_ < cfg_.stop_below) stopped_ = true;
    }

    void on_traffic_tick() {
        for (const Node& node : nodes_) {
            if (!node.alive) continue;
            for (int i = 0; i < 10; ++i) {
                Event e;
                e.kind = Event::Kind::traffic_op;
                e.node = node.handle;
                e.store_op = false;
                schedule(std::move(e), now_ + rng_.range(0, kMinuteMs - 1));
                ++stats_.traffic_lookups_scheduled;
            }
            Event e;
            e.kind = Event::Kind::traffic_op;
            e.node = node.handle;
            e.store_op = true;
            schedule(std::move(e), now_ + rng_.range(0, kMinuteMs - 1));
            ++stats_.traffic_stores_scheduled;
        }
    }

    void on_traffic_op(std::uint32_t handle, bool store_op) {
        if (!nodes_[handle].alive) {
            ++stats_.traffic_ops_discarded;  // the node died mid-minute
            return;
        }
        if (store_op) {
            NodeId object;
            for (auto& limb : object.w) limb = rng_.next();
            object = mask_to_bits(object, cfg_.params.bits);
            start_lookup(handle, object, LookupMode::store, LookupPurpose::background);
        } else {
            NodeId target;
            if (disseminated_.empty()) {
                for (auto& limb : target.w) limb = rng_.next();
                target = mask_to_bits(target, cfg_.params.bits);
            } else {
                target = disseminated_[rng_.below(disseminated_.size())];
            }
            start_lookup(handle, target, LookupMode::value, LookupPurpose::background);
        }
    }

    void on_refresh_tick(std::uint32_t handle) {
        Node& node = nodes_[handle];
        if (!node.alive) return;
        // one lookup per non-empty bucket, for a uniformly chosen known id
        for (const KBucket& bucket : node.table.buckets()) {
            if (bucket.entries.empty()) continue;
            const Contact& pick = bucket.entries[rng_.below(bucket.entries.size())];
            start_lookup(handle, pick.id, LookupMode::node, LookupPurpose::background);
        }
        const std::int64_t next =
            now_ + static_cast<std::int64_t>(cfg_.refresh_period_min) * kMinuteMs;
        if (next <= duration_ms_) {
            Event e;
            e.kind = Event::Kind::refresh_tick;
            e.node = handle;
            schedule(std::move(e), next);
        }
    }

    void capture_snapshot() {
        Snapshot snap;
        snap.time_ms = now_;
        snap.bits = cfg_.params.bits;
        snap.k = cfg_.params.k;
        snap.pass = pass_;
        for (const Node& node : nodes_) {
            if (!node.alive) continue;
            snap.nodes.emplace_back(node.id, node.table.flatten());
        }
        std::sort(snap.nodes.begin(), snap.nodes.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::uint32_t handle : stable_)
            if (nodes_[handle].alive) snap.stable_ids.push_back(nodes_[handle].id);
        std::sort(snap.stable_ids.begin(), snap.stable_ids.end());
        snapshots_.push_back(std::move(snap));
    }

    // --- state ------------------------------------------------------------

    const ScenarioConfig& cfg_;
    int pass_;
    Rng rng_;
    std::int64_t duration_ms_;
    std::int64_t bootstrap_end_;

    std::int64_t now_ = 0;
    std::uint64_t next_seq_ = 0;
    std::uint64_t next_rpc_id_ = 1;
    std::uint64_t next_lookup_id_ = 1;
    bool stopped_ = false;
    int live_count_ = 0;

    std::priority_queue<Event, std::vector<Event>, EventOrder> queue_;
    std::vector<Node> nodes_;
    std::map<NodeId, std::uint32_t> id_to_handle_;
    std::vector<std::uint32_t> stable_;
    std::unordered_map<std::uint64_t, PendingRpc> pending_;
    std::unordered_map<std::uint64_t, Lookup> lookups_;
    std::vector<NodeId> disseminated_;

    std::vector<Snapshot> snapshots_;
    std::vector<JoinRecord> joins_;
    SimStats stats_;
};

}  // namespace

PassResult run_pass(const ScenarioConfig& config, int pass_index) {
    config.validate();
    Engine engine(config, pass_index);
    return engine.run();
}

RunResult run_scenario(const ScenarioConfig& config) {
    config.validate();
    RunResult result;
    result.passes.reserve(static_cast<std::size_t>(config.passes));
    for (int pass = 0; pass < config.passes; ++pass)
        result.passes.push_back(run_pass(config, pass));
    return result;
}

}  // namespace kadconn
