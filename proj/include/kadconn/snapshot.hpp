#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kadconn/node_id.hpp"

namespace kadconn {

// Frozen routing-table contents of all live nodes at one simulation
// timestamp. This is the interchange unit between the simulator and the
// analysis side.
//
// Text form, one file per snapshot:
//   snapshot t=<ms> n=<live-count> b=<bits> k=<bucket-size> pass=<i>
//   <owner-id-hex>:<contact-id-hex> <contact-id-hex> ...
//   ...
//   stable:<id-hex> <id-hex> ...
//
// Ids are fixed-width lowercase hex of ceil(b/4) digits. The simulator emits
// owner lines sorted by id; parsing preserves file order so that
// serialize(parse(text)) == text for any valid file.
struct Snapshot {
    std::int64_t time_ms = 0;
    int bits = 160;
    int k = 20;
    int pass = 0;
    std::vector<std::pair<NodeId, std::vector<NodeId>>> nodes;
    std::vector<NodeId> stable_ids;

    int live_count() const { return static_cast<int>(nodes.size()); }
};

struct SnapshotParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string serialize_snapshot(const Snapshot& s);

// Strict parser; throws SnapshotParseError describing the first problem.
Snapshot parse_snapshot(std::string_view text);

}  // namespace kadconn
