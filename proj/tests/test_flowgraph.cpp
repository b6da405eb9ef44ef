#include "doctest.h"

#include <stdexcept>

#include "kadconn/brute_force.hpp"
#include "kadconn/connectivity.hpp"
#include "kadconn/digraph.hpp"
#include "kadconn/flow_network.hpp"
#include "kadconn/max_flow.hpp"
#include "support/ek_oracle.hpp"
#include "support/random_graphs.hpp"

using namespace kadconn;
using kadconn::testing::complete_digraph;
using kadconn::testing::ek_max_flow;
using kadconn::testing::random_digraph;

namespace {

DiGraph bidirected_cycle(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v) {
        edges.emplace_back(v, (v + 1) % n);
        edges.emplace_back((v + 1) % n, v);
    }
    return DiGraph(n, edges);
}

}  // namespace

TEST_CASE("digraph rejects malformed edge lists") {
    CHECK_THROWS_AS(DiGraph(3, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(DiGraph(3, {{0, 1}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(DiGraph(3, {{0, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(DiGraph(3, {{-1, 0}}), std::invalid_argument);
}

TEST_CASE("digraph degrees and adjacency") {
    DiGraph g(4, {{0, 1}, {0, 2}, {1, 2}, {3, 0}});
    CHECK(g.n() == 4);
    CHECK(g.m() == 4);
    CHECK(g.out_degree(0) == 2);
    CHECK(g.in_degree(2) == 2);
    CHECK(g.has_edge(0, 1));
    CHECK_FALSE(g.has_edge(1, 0));
    CHECK_FALSE(g.is_complete());
    CHECK(complete_digraph(4).is_complete());
}

TEST_CASE("split transformation vertex and arc counts") {
    DiGraph g(3, {{0, 1}, {1, 2}, {2, 0}});
    FlowNetwork net = even_transform(g);
    CHECK(net.n_vertices == 6);
    CHECK(net.arcs.size() == 6);

    FlowNetwork empty = even_transform(DiGraph(0, {}));
    CHECK(empty.n_vertices == 0);
    CHECK(empty.arcs.empty());

    FlowNetwork lone = even_transform(DiGraph(1, {}));
    CHECK(lone.n_vertices == 2);
    REQUIRE(lone.arcs.size() == 1);
    CHECK(lone.arcs[0].from == FlowNetwork::in_vertex(0));
    CHECK(lone.arcs[0].to == FlowNetwork::out_vertex(0));
    CHECK(lone.arcs[0].capacity == 1);
}

TEST_CASE("split transformation structural invariants on random graphs") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const int n = 2 + static_cast<int>(seed % 9);
        DiGraph g = random_digraph(n, 0.4, 1000 + seed);
        FlowNetwork net = even_transform(g);
        CHECK(net.n_vertices == 2 * g.n());
        CHECK(static_cast<int>(net.arcs.size()) == g.m() + g.n());

        std::vector<int> out_deg(static_cast<std::size_t>(net.n_vertices), 0);
        std::vector<int> in_deg(static_cast<std::size_t>(net.n_vertices), 0);
        for (const auto& arc : net.arcs) {
            CHECK(arc.capacity == 1);
            ++out_deg[static_cast<std::size_t>(arc.from)];
            ++in_deg[static_cast<std::size_t>(arc.to)];
        }
        for (int v = 0; v < g.n(); ++v) {
            // every in-vertex has exactly one outgoing arc, every out-vertex
            // exactly one incoming arc (the internal split arc)
            CHECK(out_deg[static_cast<std::size_t>(FlowNetwork::in_vertex(v))] == 1);
            CHECK(in_deg[static_cast<std::size_t>(FlowNetwork::out_vertex(v))] == 1);
        }
    }
}

TEST_CASE("max flow on a transformed path is one") {
    DiGraph g(3, {{0, 1}, {1, 2}});
    FlowNetwork net = even_transform(g);
    CHECK(max_flow(net, FlowNetwork::out_vertex(0), FlowNetwork::in_vertex(2)) == 1);
}

TEST_CASE("max flow on transformed K4 matches the augmenting-path oracle") {
    FlowNetwork net = even_transform(complete_digraph(4));
    for (int v = 0; v < 4; ++v) {
        for (int w = 0; w < 4; ++w) {
            if (v == w) continue;
            const int s = FlowNetwork::out_vertex(v);
            const int t = FlowNetwork::in_vertex(w);
            CHECK(ek_max_flow(net, s, t) == 3);
            CHECK(max_flow(net, s, t) == 3);
        }
    }
}

TEST_CASE("max flow of a disconnected pair is zero") {
    DiGraph g(4, {{0, 1}, {2, 3}});
    FlowNetwork net = even_transform(g);
    CHECK(max_flow(net, FlowNetwork::out_vertex(0), FlowNetwork::in_vertex(3)) == 0);
}

TEST_CASE("max flow argument validation") {
    FlowNetwork net = even_transform(DiGraph(2, {{0, 1}}));
    MaxFlowSolver solver(net);
    CHECK_THROWS_AS(solver.solve(0, 4), std::out_of_range);
    CHECK_THROWS_AS(solver.solve(-1, 0), std::out_of_range);
    CHECK_THROWS_AS(solver.solve(2, 2), std::invalid_argument);
}

TEST_CASE("solver is reusable across pairs") {
    DiGraph g = random_digraph(8, 0.5, 7);
    FlowNetwork net = even_transform(g);
    MaxFlowSolver solver(net);
    for (int round = 0; round < 2; ++round) {
        for (int v = 0; v < g.n(); ++v) {
            for (int w = 0; w < g.n(); ++w) {
                if (v == w) continue;
                const int s = FlowNetwork::out_vertex(v);
                const int t = FlowNetwork::in_vertex(w);
                CHECK(solver.solve(s, t) == ek_max_flow(net, s, t));
            }
        }
    }
}

TEST_CASE("max flow against the oracle on random unit networks") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const int n = 4 + static_cast<int>(seed % 7);
        DiGraph g = random_digraph(n, 0.35, 2000 + seed);
        FlowNetwork net = even_transform(g);
        MaxFlowSolver solver(net);
        for (int v = 0; v < n; ++v) {
            for (int w = 0; w < n; ++w) {
                if (v == w) continue;
                const int s = FlowNetwork::out_vertex(v);
                const int t = FlowNetwork::in_vertex(w);
                const auto flow = solver.solve(s, t);
                CHECK(flow == ek_max_flow(net, s, t));
                // unit capacities bound the flow by the endpoint degrees
                CHECK(flow <= std::min(g.out_degree(v), g.in_degree(w)));
            }
        }
    }
}

TEST_CASE("pair connectivity on a bidirected 5-cycle") {
    DiGraph g = bidirected_cycle(5);
    auto kappa = vertex_connectivity_pair(g, 0, 2);
    auto oracle = brute_force_vertex_connectivity(g, 0, 2);
    REQUIRE(kappa.has_value());
    CHECK(*kappa == 2);
    CHECK(kappa == oracle);
}

TEST_CASE("pair connectivity on a star is one") {
    // hub 0 connected both ways with four leaves
    std::vector<std::pair<int, int>> edges;
    for (int leaf = 1; leaf <= 4; ++leaf) {
        edges.emplace_back(0, leaf);
        edges.emplace_back(leaf, 0);
    }
    DiGraph g(5, edges);
    auto kappa = vertex_connectivity_pair(g, 1, 3);
    REQUIRE(kappa.has_value());
    CHECK(*kappa == 1);
    CHECK(kappa == brute_force_vertex_connectivity(g, 1, 3));
}

TEST_CASE("pair connectivity across components is zero") {
    DiGraph g(5, {{0, 1}, {1, 0}, {2, 3}, {3, 4}});
    auto kappa = vertex_connectivity_pair(g, 0, 4);
    REQUIRE(kappa.has_value());
    CHECK(*kappa == 0);
}

TEST_CASE("adjacent and identical pairs are not applicable") {
    DiGraph g(3, {{0, 1}, {1, 2}});
    CHECK_FALSE(vertex_connectivity_pair(g, 0, 1).has_value());
    CHECK_FALSE(vertex_connectivity_pair(g, 1, 1).has_value());
    CHECK_FALSE(brute_force_vertex_connectivity(g, 0, 1).has_value());
    CHECK_THROWS_AS(vertex_connectivity_pair(g, 0, 5), std::out_of_range);
}

TEST_CASE("edge-disjoint paths through a shared vertex: flow 3 but kappa 1") {
    // a -> {x1,x2,x3} -> h -> {y1,y2,y3} -> i. Three edge-disjoint a->i paths
    // all pass through h, so the raw edge-based flow overstates the vertex
    // connectivity and the split transformation corrects it.
    const int a = 0, h = 4, i = 8;
    DiGraph g(9, {{a, 1}, {a, 2}, {a, 3}, {1, h}, {2, h}, {3, h},
                  {h, 5}, {h, 6}, {h, 7}, {5, i}, {6, i}, {7, i}});

    FlowNetwork edge_net;  // unit-capacity network on the raw edges
    edge_net.original_n = g.n();
    edge_net.n_vertices = g.n();
    for (const auto& [u, v] : g.edges()) edge_net.arcs.push_back({u, v, 1});

    CHECK(max_flow(edge_net, a, i) == 3);
    CHECK(ek_max_flow(edge_net, a, i) == 3);

    auto kappa = vertex_connectivity_pair(g, a, i);
    REQUIRE(kappa.has_value());
    CHECK(*kappa == 1);
    CHECK(kappa == brute_force_vertex_connectivity(g, a, i));
}

TEST_CASE("brute force basics") {
    DiGraph chain(3, {{0, 1}, {1, 2}});
    CHECK(brute_force_vertex_connectivity(chain, 0, 2) == 1);

    // two vertex-disjoint two-hop paths
    DiGraph two(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}});
    CHECK(brute_force_vertex_connectivity(two, 0, 3) == 2);

    CHECK_THROWS_AS(brute_force_vertex_connectivity(random_digraph(13, 0.3, 1), 0, 1, 12),
                    std::invalid_argument);
}

TEST_CASE("flow-based pair connectivity equals brute force on random graphs") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const int n = 4 + static_cast<int>(seed % 5);
        const double density = 0.25 + 0.1 * static_cast<double>(seed % 6);
        DiGraph g = random_digraph(n, density, 3000 + seed);
        for (int v = 0; v < n; ++v) {
            for (int w = 0; w < n; ++w) {
                if (v == w || g.has_edge(v, w)) continue;
                CAPTURE(seed);
                CAPTURE(v);
                CAPTURE(w);
                CHECK(vertex_connectivity_pair(g, v, w) ==
                      brute_force_vertex_connectivity(g, v, w));
            }
        }
    }
}

TEST_CASE("complete graphs short-circuit to n-1 with no flow work") {
    for (int n = 2; n <= 6; ++n) {
        ConnectivityResult r = vertex_connectivity_graph(complete_digraph(n), 1.0);
        CHECK(r.complete);
        CHECK(r.kappa_min == n - 1);
        CHECK(r.kappa_avg == doctest::Approx(n - 1));
        CHECK(r.pairs_evaluated == 0);
    }
}

TEST_CASE("graph connectivity of a bidirected 6-cycle is two") {
    ConnectivityResult r = vertex_connectivity_graph(bidirected_cycle(6), 1.0);
    CHECK_FALSE(r.complete);
    CHECK(r.kappa_min == 2);
    CHECK(r.kappa_min <= r.kappa_avg);
    // all ordered non-adjacent pairs: 6*5 minus 12 edges
    CHECK(r.pairs_evaluated == 18);
}

TEST_CASE("graph connectivity flags disconnected graphs with zero") {
    DiGraph g(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
    ConnectivityResult r = vertex_connectivity_graph(g, 1.0);
    CHECK(r.kappa_min == 0);
}

TEST_CASE("source sampling picks the smallest out-degrees with index tie-break") {
    // out-degrees: 0 -> 2, 1 -> 1, 2 -> 1, 3 -> 0
    DiGraph g(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    auto sources = select_sample_sources(g, 0.5);
    REQUIRE(sources.size() == 2);
    CHECK(sources[0] == 3);
    CHECK(sources[1] == 1);

    auto more = select_sample_sources(g, 0.5, 3);
    REQUIRE(more.size() == 3);
    CHECK(more[2] == 2);
}

TEST_CASE("sample size is ceil(c*n)") {
    // 2500 vertices in a sparse ring; 2% of them is exactly 50 sources
    DiGraph big = bidirected_cycle(2500);
    CHECK(select_sample_sources(big, 0.02).size() == 50);
    CHECK(select_sample_sources(big, 1.0).size() == 2500);
    CHECK(select_sample_sources(bidirected_cycle(250), 0.02).size() == 5);
}

TEST_CASE("graph connectivity argument validation") {
    DiGraph g = bidirected_cycle(4);
    CHECK_THROWS_AS(vertex_connectivity_graph(DiGraph(1, {}), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(vertex_connectivity_graph(g, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(vertex_connectivity_graph(g, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(vertex_connectivity_graph(g, -0.1), std::invalid_argument);
}

TEST_CASE("sampling never undershoots the exact minimum") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        DiGraph g = random_digraph(10, 0.4, 4000 + seed);
        if (g.is_complete()) continue;
        ConnectivityResult exact = vertex_connectivity_graph(g, 1.0);
        ConnectivityResult sampled = vertex_connectivity_graph(g, 0.3);
        CHECK(exact.kappa_min <= sampled.kappa_min);
        CHECK(sampled.pairs_evaluated <= exact.pairs_evaluated);
    }
}

TEST_CASE("graph connectivity is deterministic and parallel-safe") {
    DiGraph g = random_digraph(12, 0.45, 99);
    ConnectivityResult a = vertex_connectivity_graph(g, SamplingOptions{1.0, 1, 1});
    ConnectivityResult b = vertex_connectivity_graph(g, SamplingOptions{1.0, 1, 1});
    ConnectivityResult c = vertex_connectivity_graph(g, SamplingOptions{1.0, 1, 4});
    CHECK(a.kappa_min == b.kappa_min);
    CHECK(a.kappa_avg == b.kappa_avg);
    CHECK(a.pairs_evaluated == b.pairs_evaluated);
    CHECK(a.kappa_min == c.kappa_min);
    CHECK(a.kappa_avg == c.kappa_avg);
    CHECK(a.pairs_evaluated == c.pairs_evaluated);
}
