#include "kadconn/max_flow.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace kadconn {

MaxFlowSolver::MaxFlowSolver(const FlowNetwork& net) : n_(net.n_vertices) {
    // CSR adjacency with explicit paired reverse arcs.
    std::vector<int> degree(static_cast<std::size_t>(n_), 0);
    for (const auto& arc : net.arcs) {
        ++degree[static_cast<std::size_t>(arc.from)];
        ++degree[static_cast<std::size_t>(arc.to)];
    }
    head_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (int v = 0; v < n_; ++v)
        head_[static_cast<std::size_t>(v) + 1] =
            head_[static_cast<std::size_t>(v)] + degree[static_cast<std::size_t>(v)];

    arcs_.resize(static_cast<std::size_t>(2) * net.arcs.size());
    std::vector<int> next(head_.begin(), head_.end() - 1);
    for (const auto& arc : net.arcs) {
        const int fwd = next[static_cast<std::size_t>(arc.from)]++;
        const int bwd = next[static_cast<std::size_t>(arc.to)]++;
        arcs_[static_cast<std::size_t>(fwd)] = {arc.to, bwd, arc.capacity};
        arcs_[static_cast<std::size_t>(bwd)] = {arc.from, fwd, 0};
    }

    pristine_residual_.resize(arcs_.size());
    for (std::size_t i = 0; i < arcs_.size(); ++i) pristine_residual_[i] = arcs_[i].residual;

    current_.resize(static_cast<std::size_t>(n_));
    height_.resize(static_cast<std::size_t>(n_));
    excess_.resize(static_cast<std::size_t>(n_));
    height_count_.resize(static_cast<std::size_t>(n_) + 1);
    active_.resize(static_cast<std::size_t>(n_) + 1);
}

std::int64_t MaxFlowSolver::solve(int s, int t) {
    if (s < 0 || s >= n_ || t < 0 || t >= n_)
        throw std::out_of_range("max_flow: vertex index out of range");
    if (s == t) throw std::invalid_argument("max_flow: source equals sink");

    for (std::size_t i = 0; i < arcs_.size(); ++i) arcs_[i].residual = pristine_residual_[i];
    std::fill(height_.begin(), height_.end(), 0);
    std::fill(excess_.begin(), excess_.end(), 0);
    std::fill(height_count_.begin(), height_count_.end(), 0);
    std::copy(head_.begin(), head_.end() - 1, current_.begin());
    for (auto& bucket : active_) bucket.clear();
    height_[static_cast<std::size_t>(s)] = n_;
    height_count_[0] = n_ - 1;
    highest_ = 0;

    // Saturate all arcs out of the source.
    for (int i = head_[static_cast<std::size_t>(s)]; i < head_[static_cast<std::size_t>(s) + 1]; ++i) {
        Arc& a = arcs_[static_cast<std::size_t>(i)];
        if (a.residual <= 0) continue;
        const int amount = a.residual;
        a.residual = 0;
        arcs_[static_cast<std::size_t>(a.rev)].residual += amount;
        excess_[static_cast<std::size_t>(s)] -= amount;
        const bool was_inactive = excess_[static_cast<std::size_t>(a.to)] == 0;
        excess_[static_cast<std::size_t>(a.to)] += amount;
        if (a.to != s && a.to != t && was_inactive)
            active_[0].push_back(a.to);
    }

    while (highest_ >= 0) {
        if (active_[static_cast<std::size_t>(highest_)].empty()) {
            --highest_;
            continue;
        }
        const int v = active_[static_cast<std::size_t>(highest_)].back();
        active_[static_cast<std::size_t>(highest_)].pop_back();
        // Lazily dropped: height moved, excess drained, or gapped out.
        if (height_[static_cast<std::size_t>(v)] != highest_ ||
            excess_[static_cast<std::size_t>(v)] == 0 || v == s || v == t)
            continue;

        // Discharge v fully before looking at the buckets again.
        while (excess_[static_cast<std::size_t>(v)] > 0) {
            if (current_[static_cast<std::size_t>(v)] == head_[static_cast<std::size_t>(v) + 1]) {
                relabel(v);
                if (height_[static_cast<std::size_t>(v)] >= n_) break;
                continue;
            }
            Arc& a = arcs_[static_cast<std::size_t>(current_[static_cast<std::size_t>(v)])];
            if (a.residual > 0 &&
                height_[static_cast<std::size_t>(v)] ==
                    height_[static_cast<std::size_t>(a.to)] + 1) {
                const int amount = static_cast<int>(
                    std::min<std::int64_t>(excess_[static_cast<std::size_t>(v)], a.residual));
                a.residual -= amount;
                arcs_[static_cast<std::size_t>(a.rev)].residual += amount;
                excess_[static_cast<std::size_t>(v)] -= amount;
                const bool was_inactive = excess_[static_cast<std::size_t>(a.to)] == 0;
                excess_[static_cast<std::size_t>(a.to)] += amount;
                const int to_height = height_[static_cast<std::size_t>(a.to)];
                if (a.to != s && a.to != t && was_inactive && to_height < n_) {
                    active_[static_cast<std::size_t>(to_height)].push_back(a.to);
                    highest_ = std::max(highest_, to_height);
                }
            } else {
                ++current_[static_cast<std::size_t>(v)];
            }
        }
    }

    return excess_[static_cast<std::size_t>(t)];
}

void MaxFlowSolver::relabel(int v) {
    const int old_height = height_[static_cast<std::size_t>(v)];
    int min_height = std::numeric_limits<int>::max();
    for (int i = head_[static_cast<std::size_t>(v)]; i < head_[static_cast<std::size_t>(v) + 1];
         ++i) {
        const Arc& a = arcs_[static_cast<std::size_t>(i)];
        if (a.residual > 0)
            min_height = std::min(min_height, height_[static_cast<std::size_t>(a.to)]);
    }
    height_[static_cast<std::size_t>(v)] =
        (min_height == std::numeric_limits<int>::max()) ? 2 * n_ : min_height + 1;
    current_[static_cast<std::size_t>(v)] = head_[static_cast<std::size_t>(v)];

    if (old_height < n_) {
        --height_count_[static_cast<std::size_t>(old_height)];
        if (height_count_[static_cast<std::size_t>(old_height)] == 0) gap(old_height);
    }
    const int new_height = height_[static_cast<std::size_t>(v)];
    if (new_height < n_) {
        ++height_count_[static_cast<std::size_t>(new_height)];
        highest_ = std::max(highest_, new_height);
    }
}

void MaxFlowSolver::gap(int missing_height) {
    // No vertex is left at missing_height: everything strictly above it (and
    // below n) can no longer reach the sink and is lifted out of play.
    for (int v = 0; v < n_; ++v) {
        const int h = height_[static_cast<std::size_t>(v)];
        if (h > missing_height && h < n_) {
            --height_count_[static_cast<std::size_t>(h)];
            height_[static_cast<std::size_t>(v)] = n_ + 1;
        }
    }
}

std::int64_t max_flow(const FlowNetwork& net, int s, int t) {
    MaxFlowSolver solver(net);
    return solver.solve(s, t);
}

}  // namespace kadconn
