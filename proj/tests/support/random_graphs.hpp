#pragma once

// Seeded random digraph generator shared by the unit and acceptance suites.
// Uses raw mt19937_64 draws (no std distributions) so the sequence is
// identical on every platform.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "kadconn/digraph.hpp"

namespace kadconn::testing {

// Each ordered pair (u, v), u != v, becomes an edge with probability
// density/2^64 measured against a fresh 64-bit draw.
inline DiGraph random_digraph(int n, double density, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto threshold =
        static_cast<std::uint64_t>(density * 18446744073709551615.0);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            if (rng() <= threshold) edges.emplace_back(u, v);
        }
    }
    return DiGraph(n, edges);
}

inline DiGraph complete_digraph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v) edges.emplace_back(u, v);
    return DiGraph(n, edges);
}

}  // namespace kadconn::testing
