#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "kadconn/node_id.hpp"

namespace kadconn {

// Bootstrap-node selection rule.
//   R: random among all already joined nodes
//   S: random, but five designated nodes are never removed by churn
//   B: new nodes always bootstrap via one of the stable nodes
enum class SetupKind { R, S, B };

std::string_view setup_name(SetupKind setup);
SetupKind setup_from_name(std::string_view name);

// Churn schedule: joins/removals applied once per cycle. Token form is
// "none" or "<joins>/<removals>@<cycle-minutes>" (e.g. "0/19@10").
struct ChurnSpec {
    int joins_per_cycle = 0;
    int removals_per_cycle = 0;
    int cycle_minutes = 1;

    bool any() const { return joins_per_cycle > 0 || removals_per_cycle > 0; }
};

std::string churn_token(const ChurnSpec& churn);
ChurnSpec churn_from_token(std::string_view token);

struct ConfigError : std::runtime_error {
    ConfigError(std::string field_name, const std::string& message)
        : std::runtime_error(field_name + ": " + message), field(std::move(field_name)) {}
    std::string field;
};

// One point in the experiment matrix plus the engine knobs that the spec of
// each scenario dimension leaves to the environment (latency, timeouts,
// refresh period).
struct ScenarioConfig {
    int network_size = 250;
    SetupKind setup = SetupKind::R;
    ChurnSpec churn;
    bool traffic = false;
    KademliaParams params;
    int passes = 5;
    std::uint64_t seed = 1;
    int snapshot_period_min = 10;
    int duration_min = 360;
    int stop_below = 10;    // end a pass once fewer live nodes remain
    int stable_count = 5;   // designated stable nodes in setups S and B

    int latency_min_ms = 10;
    int latency_max_ms = 100;
    int rpc_timeout_ms = 1000;
    int rpc_retries = 2;
    int refresh_period_min = 60;

    void validate() const;  // throws ConfigError
};

// Flat "key = value" config text. '#' starts a comment, every key is
// optional, unknown keys are rejected. See serialize_scenario_config for the
// full key set.
ScenarioConfig parse_scenario_config(std::string_view text);
std::string serialize_scenario_config(const ScenarioConfig& config);

// Filesystem-safe tag identifying the scenario point, e.g.
// "n250_R_0-19-10_t1_k20". Snapshot and CSV files are named after it.
std::string scenario_tag(const ScenarioConfig& config);

struct ScenarioTagInfo {
    int size = 0;
    std::string setup;
    std::string churn;    // churn token, e.g. "none" or "0/19@10"
    std::string traffic;  // "on" or "off"
    int k = 0;
};

// Recovers the tag fields from a tag produced by scenario_tag.
std::optional<ScenarioTagInfo> parse_scenario_tag(std::string_view tag);

}  // namespace kadconn
