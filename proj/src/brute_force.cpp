#include "kadconn/brute_force.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace kadconn {

namespace {

// v->w reachability with the vertices in `removed` (bitmask over `others`)
// taken out of the graph.
bool reachable(const DiGraph& g, int v, int w, const std::vector<int>& others,
               std::uint32_t removed_mask) {
    std::vector<char> blocked(static_cast<std::size_t>(g.n()), 0);
    for (std::size_t i = 0; i < others.size(); ++i)
        if (removed_mask & (std::uint32_t{1} << i))
            blocked[static_cast<std::size_t>(others[i])] = 1;

    std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
    std::vector<int> stack{v};
    seen[static_cast<std::size_t>(v)] = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int x : g.out_neighbors(u)) {
            if (x == w) return true;
            if (!seen[static_cast<std::size_t>(x)] && !blocked[static_cast<std::size_t>(x)]) {
                seen[static_cast<std::size_t>(x)] = 1;
                stack.push_back(x);
            }
        }
    }
    return false;
}

}  // namespace

std::optional<int> brute_force_vertex_connectivity(const DiGraph& g, int v, int w, int max_n) {
    if (v < 0 || v >= g.n() || w < 0 || w >= g.n())
        throw std::out_of_range("brute force: vertex index out of range");
    if (g.n() > max_n)
        throw std::invalid_argument("brute force: graph too large for enumeration");
    if (v == w || g.has_edge(v, w)) return std::nullopt;

    std::vector<int> others;
    for (int u = 0; u < g.n(); ++u)
        if (u != v && u != w) others.push_back(u);

    const std::uint32_t mask_end = std::uint32_t{1} << others.size();
    for (int size = 0; size <= static_cast<int>(others.size()); ++size) {
        for (std::uint32_t mask = 0; mask < mask_end; ++mask) {
            if (std::popcount(mask) != size) continue;
            if (!reachable(g, v, w, others, mask)) return size;
        }
    }
    // Non-adjacent pairs are always separated by removing every other vertex.
    return static_cast<int>(others.size());
}

}  // namespace kadconn
