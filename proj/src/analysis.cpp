#include "kadconn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace kadconn {

DiGraph snapshot_to_graph(const Snapshot& snapshot, IdIndex* index) {
    std::vector<NodeId> ids;
    ids.reserve(snapshot.nodes.size());
    for (const auto& [owner, contacts] : snapshot.nodes) ids.push_back(owner);
    std::sort(ids.begin(), ids.end());

    std::map<NodeId, int> to_vertex;
    for (std::size_t i = 0; i < ids.size(); ++i) to_vertex.emplace(ids[i], static_cast<int>(i));

    std::vector<std::pair<int, int>> edges;
    for (const auto& [owner, contacts] : snapshot.nodes) {
        const int v = to_vertex.at(owner);
        for (const NodeId& contact : contacts) {
            const auto it = to_vertex.find(contact);
            if (it == to_vertex.end()) continue;  // contact no longer live
            edges.emplace_back(v, it->second);
        }
    }

    if (index != nullptr) index->ids = std::move(ids);
    return DiGraph(static_cast<int>(snapshot.nodes.size()), edges);
}

ReportRow analyze_snapshot(const Snapshot& snapshot, const SamplingOptions& opts) {
    ReportRow row;
    row.pass = snapshot.pass;
    row.time_min = static_cast<double>(snapshot.time_ms) / 60000.0;
    row.live_nodes = snapshot.live_count();
    row.sample_fraction = opts.fraction;
    row.k = snapshot.k;

    if (snapshot.live_count() < 2) return row;  // kappa undefined, marker row

    const DiGraph g = snapshot_to_graph(snapshot);
    const ConnectivityResult result = vertex_connectivity_graph(g, opts);
    row.kappa_min = result.kappa_min;
    row.kappa_avg = result.kappa_avg;
    row.pairs_evaluated = result.pairs_evaluated;
    row.complete = result.complete;
    return row;
}

ResilienceBound resilience_bound(int kappa) {
    if (kappa < 0) throw std::invalid_argument("resilience: kappa must be >= 0");
    ResilienceBound bound;
    bound.kappa = kappa;
    bound.r = kappa - 1;  // -1 means no resilience at all
    bound.max_tolerated_attackers = bound.r;
    return bound;
}

double near_undirected_ratio(const DiGraph& g) {
    if (g.m() == 0) throw std::invalid_argument("near_undirected_ratio: graph has no edges");
    std::int64_t mutual = 0;
    for (int u = 0; u < g.n(); ++u)
        for (int v : g.out_neighbors(u))
            if (g.has_edge(v, u)) ++mutual;
    return static_cast<double>(mutual) / static_cast<double>(g.m());
}

std::string format_decimal(double value, int max_places) {
    double scale = 1.0;
    for (int i = 0; i < max_places; ++i) scale *= 10.0;
    // nearbyint rounds half to even under the default FP environment
    const double rounded = std::nearbyint(value * scale) / scale;

    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*f", max_places, rounded);
    std::string out(buffer);
    if (out.find('.') != std::string::npos) {
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return out;
}

std::string export_report_csv(const std::vector<ReportRow>& rows) {
    std::string out =
        "pass,time_min,live_nodes,kappa_min,kappa_avg,pairs_evaluated,"
        "sample_fraction,setup,churn,traffic,k\n";
    for (const ReportRow& row : rows) {
        out += std::to_string(row.pass);
        out += ',';
        out += format_decimal(row.time_min);
        out += ',';
        out += std::to_string(row.live_nodes);
        out += ',';
        if (row.kappa_min) out += std::to_string(*row.kappa_min);
        out += ',';
        if (row.kappa_avg) out += format_decimal(*row.kappa_avg);
        out += ',';
        out += std::to_string(row.pairs_evaluated);
        out += ',';
        out += format_decimal(row.sample_fraction);
        out += ',';
        out += row.setup;
        out += ',';
        out += row.churn;
        out += ',';
        out += row.traffic;
        out += ',';
        out += std::to_string(row.k);
        out += '\n';
    }
    return out;
}

}  // namespace kadconn
