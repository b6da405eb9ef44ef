#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kadconn/connectivity.hpp"
#include "kadconn/digraph.hpp"
#include "kadconn/snapshot.hpp"

namespace kadconn {

// Vertex index <-> NodeId mapping used when turning a snapshot into a graph.
// Ids are sorted ascending; index i corresponds to ids[i].
struct IdIndex {
    std::vector<NodeId> ids;
};

// One vertex per live node; edge (v, w) iff w appears in v's contact list and
// w is itself live at snapshot time. Contacts of dead nodes vanish.
DiGraph snapshot_to_graph(const Snapshot& snapshot, IdIndex* index = nullptr);

// One time-series row of a connectivity report. kappa fields are empty for
// snapshots with fewer than two live nodes.
struct ReportRow {
    int pass = 0;
    double time_min = 0.0;
    int live_nodes = 0;
    std::optional<int> kappa_min;
    std::optional<double> kappa_avg;
    std::uint64_t pairs_evaluated = 0;
    double sample_fraction = 1.0;
    bool complete = false;
    std::string setup;    // scenario tags; empty when unknown
    std::string churn;
    std::string traffic;  // "on" / "off"
    int k = 0;
};

ReportRow analyze_snapshot(const Snapshot& snapshot, const SamplingOptions& opts);

// kappa(D) > r >= a: a network of connectivity kappa tolerates up to
// r = kappa - 1 subverted nodes. kappa <= 0 yields r = -1 ("none").
struct ResilienceBound {
    int kappa = 0;
    int r = -1;
    int max_tolerated_attackers = -1;
};

ResilienceBound resilience_bound(int kappa);

// Fraction of edges whose reverse edge is also present. Requires m >= 1.
double near_undirected_ratio(const DiGraph& g);

// CSV with the fixed header
// pass,time_min,live_nodes,kappa_min,kappa_avg,pairs_evaluated,sample_fraction,setup,churn,traffic,k
// Decimal fields use at most four places, round-half-even, trailing zeros
// trimmed.
std::string export_report_csv(const std::vector<ReportRow>& rows);

// Shared decimal formatting for CSV values and time stamps.
std::string format_decimal(double value, int max_places = 4);

}  // namespace kadconn
