#include "kadconn/scenario.hpp"

#include <charconv>
#include <map>
#include <vector>

namespace kadconn {

std::string_view setup_name(SetupKind setup) {
    switch (setup) {
        case SetupKind::R: return "R";
        case SetupKind::S: return "S";
        case SetupKind::B: return "B";
    }
    return "?";
}

SetupKind setup_from_name(std::string_view name) {
    if (name == "R") return SetupKind::R;
    if (name == "S") return SetupKind::S;
    if (name == "B") return SetupKind::B;
    throw ConfigError("setup", "must be one of R, S, B");
}

std::string churn_token(const ChurnSpec& churn) {
    if (!churn.any()) return "none";
    return std::to_string(churn.joins_per_cycle) + "/" +
           std::to_string(churn.removals_per_cycle) + "@" +
           std::to_string(churn.cycle_minutes);
}

namespace {

int parse_int_field(std::string_view field, std::string_view digits) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
        throw ConfigError(std::string(field), "expected an integer, got '" +
                                                  std::string(digits) + "'");
    return value;
}

std::uint64_t parse_u64_field(std::string_view field, std::string_view digits) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
        throw ConfigError(std::string(field), "expected an unsigned integer, got '" +
                                                  std::string(digits) + "'");
    return value;
}

std::string_view trim(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
        text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
        text.remove_suffix(1);
    return text;
}

}  // namespace

ChurnSpec churn_from_token(std::string_view token) {
    if (token == "none") return ChurnSpec{};
    const std::size_t slash = token.find('/');
    if (slash == std::string_view::npos)
        throw ConfigError("churn", "expected 'none' or '<joins>/<removals>@<cycle-min>'");
    ChurnSpec churn;
    churn.joins_per_cycle = parse_int_field("churn", token.substr(0, slash));
    std::string_view rest = token.substr(slash + 1);
    const std::size_t at = rest.find('@');
    if (at == std::string_view::npos) {
        churn.removals_per_cycle = parse_int_field("churn", rest);
        churn.cycle_minutes = 1;
    } else {
        churn.removals_per_cycle = parse_int_field("churn", rest.substr(0, at));
        churn.cycle_minutes = parse_int_field("churn", rest.substr(at + 1));
    }
    if (churn.joins_per_cycle < 0 || churn.removals_per_cycle < 0)
        throw ConfigError("churn", "counts must be non-negative");
    if (churn.any() && churn.cycle_minutes < 1)
        throw ConfigError("churn", "cycle must be >= 1 minute");
    return churn;
}

void ScenarioConfig::validate() const {
    if (network_size < 2) throw ConfigError("size", "network size must be >= 2");
    if (passes < 1) throw ConfigError("passes", "must be >= 1");
    if (snapshot_period_min < 1) throw ConfigError("snapshot_period_min", "must be >= 1");
    if (duration_min < 1) throw ConfigError("duration_min", "must be >= 1");
    if (churn.any() && churn.cycle_minutes < 1)
        throw ConfigError("churn", "cycle must be >= 1 minute");
    if (churn.joins_per_cycle < 0 || churn.removals_per_cycle < 0)
        throw ConfigError("churn", "counts must be non-negative");
    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("params", e.what());
    }
    if (stop_below < 0) throw ConfigError("stop_below", "must be >= 0");
    if (setup != SetupKind::R && stable_count < 1)
        throw ConfigError("stable_count", "setups S and B need at least one stable node");
    if (stable_count > network_size)
        throw ConfigError("stable_count", "cannot exceed the network size");
    if (latency_min_ms < 0 || latency_max_ms < latency_min_ms)
        throw ConfigError("latency", "need 0 <= latency_min_ms <= latency_max_ms");
    if (rpc_timeout_ms <= latency_max_ms * 2)
        throw ConfigError("rpc_timeout_ms", "timeout must exceed a round trip");
    if (rpc_retries < 0) throw ConfigError("rpc_retries", "must be >= 0");
    if (refresh_period_min < 1) throw ConfigError("refresh_period_min", "must be >= 1");
}

ScenarioConfig parse_scenario_config(std::string_view text) {
    ScenarioConfig config;
    std::map<std::string, bool> seen;

    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        const std::size_t end = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
        pos = (end == std::string_view::npos) ? text.size() + 1 : end + 1;
        ++line_no;

        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
        const std::string key{trim(line.substr(0, eq))};
        const std::string value{trim(line.substr(eq + 1))};
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
        if (seen[key]) throw ConfigError(key, "duplicate key");
        seen[key] = true;

        if (key == "size") config.network_size = parse_int_field(key, value);
        else if (key == "setup") config.setup = setup_from_name(value);
        else if (key == "churn") config.churn = churn_from_token(value);
        else if (key == "traffic") {
            if (value == "on") config.traffic = true;
            else if (value == "off") config.traffic = false;
            else throw ConfigError(key, "must be 'on' or 'off'");
        }
        else if (key == "k") config.params.k = parse_int_field(key, value);
        else if (key == "bits") config.params.bits = parse_int_field(key, value);
        else if (key == "alpha") config.params.alpha = parse_int_field(key, value);
        else if (key == "passes") config.passes = parse_int_field(key, value);
        else if (key == "seed") config.seed = parse_u64_field(key, value);
        else if (key == "snapshot_period_min") config.snapshot_period_min = parse_int_field(key, value);
        else if (key == "duration_min") config.duration_min = parse_int_field(key, value);
        else if (key == "stop_below") config.stop_below = parse_int_field(key, value);
        else if (key == "stable_count") config.stable_count = parse_int_field(key, value);
        else if (key == "latency_min_ms") config.latency_min_ms = parse_int_field(key, value);
        else if (key == "latency_max_ms") config.latency_max_ms = parse_int_field(key, value);
        else if (key == "rpc_timeout_ms") config.rpc_timeout_ms = parse_int_field(key, value);
        else if (key == "rpc_retries") config.rpc_retries = parse_int_field(key, value);
        else if (key == "refresh_period_min") config.refresh_period_min = parse_int_field(key, value);
        else throw ConfigError(key, "unknown key");
    }

    config.validate();
    return config;
}

std::string serialize_scenario_config(const ScenarioConfig& c) {
    std::string out;
    out += "size = " + std::to_string(c.network_size) + "\n";
    out += "setup = " + std::string(setup_name(c.setup)) + "\n";
    out += "churn = " + churn_token(c.churn) + "\n";
    out += std::string("traffic = ") + (c.traffic ? "on" : "off") + "\n";
    out += "k = " + std::to_string(c.params.k) + "\n";
    out += "bits = " + std::to_string(c.params.bits) + "\n";
    out += "alpha = " + std::to_string(c.params.alpha) + "\n";
    out += "passes = " + std::to_string(c.passes) + "\n";
    out += "seed = " + std::to_string(c.seed) + "\n";
    out += "snapshot_period_min = " + std::to_string(c.snapshot_period_min) + "\n";
    out += "duration_min = " + std::to_string(c.duration_min) + "\n";
    out += "stop_below = " + std::to_string(c.stop_below) + "\n";
    out += "stable_count = " + std::to_string(c.stable_count) + "\n";
    out += "latency_min_ms = " + std::to_string(c.latency_min_ms) + "\n";
    out += "latency_max_ms = " + std::to_string(c.latency_max_ms) + "\n";
    out += "rpc_timeout_ms = " + std::to_string(c.rpc_timeout_ms) + "\n";
    out += "rpc_retries = " + std::to_string(c.rpc_retries) + "\n";
    out += "refresh_period_min = " + std::to_string(c.refresh_period_min) + "\n";
    return out;
}

std::string scenario_tag(const ScenarioConfig& c) {
    std::string churn = "none";
    if (c.churn.any())
        churn = std::to_string(c.churn.joins_per_cycle) + "-" +
                std::to_string(c.churn.removals_per_cycle) + "-" +
                std::to_string(c.churn.cycle_minutes);
    return "n" + std::to_string(c.network_size) + "_" + std::string(setup_name(c.setup)) + "_" +
           churn + "_" + (c.traffic ? "t1" : "t0") + "_k" + std::to_string(c.params.k);
}

std::optional<ScenarioTagInfo> parse_scenario_tag(std::string_view tag) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (pos <= tag.size()) {
        const std::size_t next = tag.find('_', pos);
        if (next == std::string_view::npos) {
            parts.push_back(tag.substr(pos));
            break;
        }
        parts.push_back(tag.substr(pos, next - pos));
        pos = next + 1;
    }
    if (parts.size() != 5) return std::nullopt;
    if (parts[0].size() < 2 || parts[0][0] != 'n') return std::nullopt;
    if (parts[4].size() < 2 || parts[4][0] != 'k') return std::nullopt;

    ScenarioTagInfo info;
    try {
        info.size = parse_int_field("tag", parts[0].substr(1));
        info.setup = std::string(parts[1]);
        setup_from_name(info.setup);
        if (parts[2] == "none") {
            info.churn = "none";
        } else {
            std::string token{parts[2]};
            const std::size_t first = token.find('-');
            const std::size_t second = token.find('-', first + 1);
            if (first == std::string::npos || second == std::string::npos) return std::nullopt;
            token[first] = '/';
            token[second] = '@';
            churn_from_token(token);  // validate
            info.churn = token;
        }
        if (parts[3] == "t1") info.traffic = "on";
        else if (parts[3] == "t0") info.traffic = "off";
        else return std::nullopt;
        info.k = parse_int_field("tag", parts[4].substr(1));
    } catch (const ConfigError&) {
        return std::nullopt;
    }
    return info;
}

}  // namespace kadconn
