#include "kadconn/connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "kadconn/flow_network.hpp"
#include "kadconn/max_flow.hpp"

namespace kadconn {

std::optional<int> vertex_connectivity_pair(const DiGraph& g, int v, int w) {
    if (v < 0 || v >= g.n() || w < 0 || w >= g.n())
        throw std::out_of_range("vertex_connectivity_pair: vertex index out of range");
    if (v == w || g.has_edge(v, w)) return std::nullopt;
    const FlowNetwork net = even_transform(g);
    MaxFlowSolver solver(net);
    return static_cast<int>(
        solver.solve(FlowNetwork::out_vertex(v), FlowNetwork::in_vertex(w)));
}

std::vector<int> select_sample_sources(const DiGraph& g, double fraction, int min_sources) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw std::invalid_argument("sample fraction must be in (0, 1]");
    // Small slack so that e.g. 0.02 * 250 lands on 5, not 6.
    const int want = static_cast<int>(std::ceil(fraction * g.n() - 1e-9));
    const int count = std::min(g.n(), std::max({want, min_sources, 1}));

    std::vector<int> order(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) order[static_cast<std::size_t>(v)] = v;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (g.out_degree(a) != g.out_degree(b)) return g.out_degree(a) < g.out_degree(b);
        return a < b;
    });
    order.resize(static_cast<std::size_t>(count));
    return order;
}

namespace {

struct PartialResult {
    std::int64_t min_kappa = std::numeric_limits<std::int64_t>::max();
    std::uint64_t sum = 0;
    std::uint64_t pairs = 0;
};

PartialResult evaluate_sources(const DiGraph& g, const FlowNetwork& net,
                               const std::vector<int>& sources, std::size_t begin,
                               std::size_t end) {
    PartialResult out;
    MaxFlowSolver solver(net);
    for (std::size_t i = begin; i < end; ++i) {
        const int v = sources[i];
        for (int w = 0; w < g.n(); ++w) {
            if (w == v || g.has_edge(v, w)) continue;
            const std::int64_t kappa =
                solver.solve(FlowNetwork::out_vertex(v), FlowNetwork::in_vertex(w));
            out.min_kappa = std::min(out.min_kappa, kappa);
            out.sum += static_cast<std::uint64_t>(kappa);
            ++out.pairs;
        }
    }
    return out;
}

}  // namespace

ConnectivityResult vertex_connectivity_graph(const DiGraph& g, const SamplingOptions& opts) {
    if (g.n() < 2) throw std::invalid_argument("vertex connectivity needs n >= 2");

    if (g.is_complete()) {
        ConnectivityResult result;
        result.kappa_min = g.n() - 1;
        result.kappa_avg = static_cast<double>(g.n() - 1);
        result.pairs_evaluated = 0;
        result.complete = true;
        return result;
    }

    const std::vector<int> sources = select_sample_sources(g, opts.fraction, opts.min_sources);
    const FlowNetwork net = even_transform(g);

    const int jobs = std::max(1, opts.jobs);
    std::vector<PartialResult> partials;
    if (jobs == 1 || sources.size() <= 1) {
        partials.push_back(evaluate_sources(g, net, sources, 0, sources.size()));
    } else {
        const std::size_t workers =
            std::min<std::size_t>(static_cast<std::size_t>(jobs), sources.size());
        partials.resize(workers);
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) {
            const std::size_t begin = sources.size() * t / workers;
            const std::size_t end = sources.size() * (t + 1) / workers;
            threads.emplace_back([&, t, begin, end] {
                partials[t] = evaluate_sources(g, net, sources, begin, end);
            });
        }
        for (auto& thread : threads) thread.join();
    }

    PartialResult merged;
    for (const PartialResult& p : partials) {
        merged.min_kappa = std::min(merged.min_kappa, p.min_kappa);
        merged.sum += p.sum;
        merged.pairs += p.pairs;
    }

    // A non-complete graph always yields at least one evaluated pair: the
    // minimum-out-degree vertex has a non-neighbor.
    ConnectivityResult result;
    result.kappa_min = static_cast<int>(merged.min_kappa);
    result.kappa_avg = static_cast<double>(merged.sum) / static_cast<double>(merged.pairs);
    result.pairs_evaluated = merged.pairs;
    result.complete = false;
    return result;
}

}  // namespace kadconn
