#include "kadconn/digraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace kadconn {

DiGraph::DiGraph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
    if (n < 0) throw std::invalid_argument("digraph: negative vertex count");
    out_.resize(static_cast<std::size_t>(n));
    in_.resize(static_cast<std::size_t>(n));
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("digraph: edge endpoint out of range");
        if (u == v) throw std::invalid_argument("digraph: self-loops are not allowed");
        out_[static_cast<std::size_t>(u)].push_back(v);
        in_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& adj : out_) {
        std::sort(adj.begin(), adj.end());
        if (std::adjacent_find(adj.begin(), adj.end()) != adj.end())
            throw std::invalid_argument("digraph: parallel edges are not allowed");
    }
    for (auto& adj : in_) std::sort(adj.begin(), adj.end());
    m_ = static_cast<int>(edges.size());
}

bool DiGraph::has_edge(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) return false;
    const auto& adj = out_[static_cast<std::size_t>(u)];
    return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<std::pair<int, int>> DiGraph::edges() const {
    std::vector<std::pair<int, int>> result;
    result.reserve(static_cast<std::size_t>(m_));
    for (int u = 0; u < n_; ++u)
        for (int v : out_[static_cast<std::size_t>(u)]) result.emplace_back(u, v);
    return result;
}

}  // namespace kadconn
