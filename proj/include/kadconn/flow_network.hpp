#pragma once

#include <vector>

#include "kadconn/digraph.hpp"

namespace kadconn {

// Unit-capacity flow network produced by the vertex-splitting transformation:
// every original vertex v becomes an in-vertex v' and an out-vertex v'' joined
// by an internal arc (v', v'') of capacity 1, and every original edge (u, v)
// becomes the arc (u'', v'). The result has 2n vertices and m+n arcs, and the
// maximum flow from v'' to w' equals the vertex connectivity kappa(v, w) for
// non-adjacent v, w.
struct FlowNetwork {
    struct Arc {
        int from;
        int to;
        int capacity;
    };

    int original_n = 0;
    int n_vertices = 0;        // 2 * original_n
    std::vector<Arc> arcs;     // internal arcs first, then transformed edges

    static int in_vertex(int v) { return 2 * v; }
    static int out_vertex(int v) { return 2 * v + 1; }
};

// Applies the splitting transformation. The input graph is validated at
// construction time, so this cannot fail.
FlowNetwork even_transform(const DiGraph& g);

}  // namespace kadconn
