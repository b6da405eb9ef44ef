#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kadconn/digraph.hpp"

namespace kadconn {

// Result of a whole-graph connectivity computation. `complete` marks the
// shortcut for complete graphs, where kappa is n-1 by definition and no flow
// is computed; `pairs_evaluated` counts the max-flow runs otherwise.
struct ConnectivityResult {
    int kappa_min = 0;
    double kappa_avg = 0.0;
    std::uint64_t pairs_evaluated = 0;
    bool complete = false;
};

struct SamplingOptions {
    double fraction = 1.0;  // c in (0, 1]: evaluate ceil(c*n) source vertices
    int min_sources = 1;    // lower bound on the sample size, capped at n
    int jobs = 1;           // worker threads over source vertices
};

// kappa(v, w): max flow from v'' to w' in the split-vertex network. Returns
// nullopt for identical or adjacent pairs, which have no defined vertex
// connectivity and must be skipped by callers.
std::optional<int> vertex_connectivity_pair(const DiGraph& g, int v, int w);

// The ceil(c*n) vertices of smallest out-degree, ties broken by ascending
// vertex index. This is the source sample for the reduced computation.
std::vector<int> select_sample_sources(const DiGraph& g, double fraction, int min_sources = 1);

// kappa over the graph: minimum (and mean) of kappa(v, w) over all sampled
// sources v and all non-adjacent targets w. fraction = 1 gives the exact
// kappa(D) over all n(n-1) ordered non-adjacent pairs. Complete graphs short
// circuit to n-1 with no flow computations. Requires n >= 2.
ConnectivityResult vertex_connectivity_graph(const DiGraph& g, const SamplingOptions& opts = {});

inline ConnectivityResult vertex_connectivity_graph(const DiGraph& g, double fraction) {
    return vertex_connectivity_graph(g, SamplingOptions{fraction, 1, 1});
}

}  // namespace kadconn
