#include "kadconn/flow_network.hpp"

namespace kadconn {

FlowNetwork even_transform(const DiGraph& g) {
    FlowNetwork net;
    net.original_n = g.n();
    net.n_vertices = 2 * g.n();
    net.arcs.reserve(static_cast<std::size_t>(g.n() + g.m()));
    for (int v = 0; v < g.n(); ++v)
        net.arcs.push_back({FlowNetwork::in_vertex(v), FlowNetwork::out_vertex(v), 1});
    for (int u = 0; u < g.n(); ++u)
        for (int v : g.out_neighbors(u))
            net.arcs.push_back({FlowNetwork::out_vertex(u), FlowNetwork::in_vertex(v), 1});
    return net;
}

}  // namespace kadconn
