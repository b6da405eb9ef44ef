#pragma once

#include <cstdint>
#include <vector>

#include "kadconn/flow_network.hpp"

namespace kadconn {

// Highest-label push-relabel with the gap heuristic, set up once per network
// and reusable for many (source, sink) pairs. Each solve() starts from the
// pristine capacities, so the underlying network is never modified.
class MaxFlowSolver {
public:
    explicit MaxFlowSolver(const FlowNetwork& net);

    // Exact maximum s->t flow. Throws std::out_of_range on bad vertex
    // indices and std::invalid_argument when s == t.
    std::int64_t solve(int s, int t);

private:
    struct Arc {
        int to;
        int rev;        // index of the paired reverse arc in arcs_
        int residual;   // remaining capacity
    };

    void relabel(int v);
    void gap(int missing_height);

    int n_ = 0;
    std::vector<Arc> arcs_;
    std::vector<int> pristine_residual_;
    std::vector<int> head_;      // CSR offsets into arcs_
    std::vector<int> current_;   // current-arc pointers
    std::vector<int> height_;
    std::vector<std::int64_t> excess_;
    std::vector<int> height_count_;
    std::vector<std::vector<int>> active_;  // active vertices bucketed by height
    int highest_ = 0;
};

// One-shot convenience wrapper; `net` is taken by const reference and left
// untouched.
std::int64_t max_flow(const FlowNetwork& net, int s, int t);

}  // namespace kadconn
