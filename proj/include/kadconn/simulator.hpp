#pragma once

#include <cstdint>
#include <vector>

#include "kadconn/scenario.hpp"
#include "kadconn/snapshot.hpp"

namespace kadconn {

// Counters exposed for tests and run summaries.
struct SimStats {
    std::int64_t join_failures = 0;
    std::int64_t lookups_started = 0;
    std::int64_t lookups_completed = 0;
    std::int64_t lookups_without_contacts = 0;
    std::int64_t traffic_lookups_scheduled = 0;
    std::int64_t traffic_stores_scheduled = 0;
    std::int64_t traffic_ops_discarded = 0;
    std::int64_t messages_delivered = 0;
    std::int64_t rpc_failures = 0;
    std::int64_t evictions = 0;
    std::int64_t stores_delivered = 0;
    std::int64_t removals = 0;
};

struct JoinRecord {
    std::uint32_t joiner = 0;
    std::int32_t bootstrap = -1;  // -1 for the seed node
    std::int64_t time_ms = 0;
};

struct PassResult {
    int pass_index = 0;
    std::uint64_t seed = 0;
    std::vector<Snapshot> snapshots;
    SimStats stats;
    std::vector<JoinRecord> joins;
    std::int64_t end_time_ms = 0;
    int live_at_end = 0;
};

struct RunResult {
    std::vector<PassResult> passes;
};

// Runs one deterministic pass: bootstrap, then churn/traffic/refresh
// schedules until the duration elapses or the network shrinks below the
// configured floor. Identical (config, pass_index) yields bit-identical
// snapshots.
PassResult run_pass(const ScenarioConfig& config, int pass_index);

// All passes of the scenario, seeds derived via pass_seed().
RunResult run_scenario(const ScenarioConfig& config);

}  // namespace kadconn
