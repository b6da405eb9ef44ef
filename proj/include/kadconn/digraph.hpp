#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace kadconn {

// Simple directed graph with dense vertex indices, no self-loops and no
// parallel edges. Every edge carries an implicit capacity of 1.
class DiGraph {
public:
    // Builds the graph and validates the input edge list.
    // Throws std::invalid_argument on out-of-range endpoints, self-loops or
    // parallel edges.
    DiGraph(int n, const std::vector<std::pair<int, int>>& edges);

    int n() const { return n_; }
    int m() const { return m_; }

    int out_degree(int v) const { return static_cast<int>(out_[static_cast<std::size_t>(v)].size()); }
    int in_degree(int v) const { return static_cast<int>(in_[static_cast<std::size_t>(v)].size()); }

    const std::vector<int>& out_neighbors(int v) const { return out_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& in_neighbors(int v) const { return in_[static_cast<std::size_t>(v)]; }

    bool has_edge(int u, int v) const;

    // Every vertex adjacent to every other, i.e. m = n(n-1).
    bool is_complete() const {
        return static_cast<std::int64_t>(m_) ==
               static_cast<std::int64_t>(n_) * (n_ - 1);
    }

    // Edges in canonical order: ascending source, then ascending target.
    std::vector<std::pair<int, int>> edges() const;

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<std::vector<int>> out_;  // sorted adjacency
    std::vector<std::vector<int>> in_;   // sorted adjacency
};

}  // namespace kadconn
