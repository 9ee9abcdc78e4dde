#include "gflbs/maxflow.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gflbs {

namespace {

void check_capacity(double capacity) {
    if (!(capacity >= 0.0) || !std::isfinite(capacity))
        throw std::invalid_argument("FlowNetwork: capacity must be finite and nonnegative");
}

}  // namespace

FlowNetwork::FlowNetwork(std::size_t node_count)
    : source_caps_(node_count, 0.0), sink_caps_(node_count, 0.0) {}

void FlowNetwork::add_pairwise(std::uint32_t u, std::uint32_t v, double capacity) {
    if (u == v) throw std::invalid_argument("FlowNetwork: self-loop rejected");
    if (u >= node_count() || v >= node_count())
        throw std::invalid_argument("FlowNetwork: node index out of range");
    check_capacity(capacity);
    arcs_.push_back({u, v, capacity});
}

void FlowNetwork::add_source_cap(std::uint32_t v, double capacity) {
    check_capacity(capacity);
    source_caps_.at(v) += capacity;
}

void FlowNetwork::add_sink_cap(std::uint32_t v, double capacity) {
    check_capacity(capacity);
    sink_caps_.at(v) += capacity;
}

namespace {

// Adjacency-array Dinic solver. Arc i and i^1 are mutual residuals.
class Dinic {
public:
    explicit Dinic(std::size_t nodes) : head_(nodes, -1), level_(nodes), iter_(nodes) {}

    void add_arc(int u, int v, double cap_uv, double cap_vu) {
        to_.push_back(v);
        cap_.push_back(cap_uv);
        next_.push_back(head_[u]);
        head_[u] = static_cast<int>(to_.size()) - 1;
        to_.push_back(u);
        cap_.push_back(cap_vu);
        next_.push_back(head_[v]);
        head_[v] = static_cast<int>(to_.size()) - 1;
    }

    double run(int s, int t) {
        double flow = 0.0;
        while (bfs(s, t)) {
            iter_ = head_;
            while (true) {
                const double pushed = dfs(s, t, std::numeric_limits<double>::infinity());
                if (pushed == 0.0) break;
                flow += pushed;
            }
        }
        return flow;
    }

    // Residual reachability from s; valid after run().
    std::vector<bool> reachable(int s) const {
        std::vector<bool> seen(head_.size(), false);
        std::vector<int> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int e = head_[u]; e != -1; e = next_[e]) {
                if (cap_[e] > 0.0 && !seen[to_[e]]) {
                    seen[to_[e]] = true;
                    stack.push_back(to_[e]);
                }
            }
        }
        return seen;
    }

private:
    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::vector<int> queue{s};
        level_[s] = 0;
        for (std::size_t q = 0; q < queue.size(); ++q) {
            const int u = queue[q];
            for (int e = head_[u]; e != -1; e = next_[e]) {
                if (cap_[e] > 0.0 && level_[to_[e]] < 0) {
                    level_[to_[e]] = level_[u] + 1;
                    queue.push_back(to_[e]);
                }
            }
        }
        return level_[t] >= 0;
    }

    double dfs(int u, int t, double limit) {
        if (u == t) return limit;
        for (int& e = iter_[u]; e != -1; e = next_[e]) {
            const int v = to_[e];
            if (cap_[e] > 0.0 && level_[v] == level_[u] + 1) {
                const double pushed = dfs(v, t, std::min(limit, cap_[e]));
                if (pushed > 0.0) {
                    cap_[e] -= pushed;
                    cap_[e ^ 1] += pushed;
                    return pushed;
                }
            }
        }
        level_[u] = -1;  // dead end, prune
        return 0.0;
    }

    std::vector<int> to_;
    std::vector<double> cap_;
    std::vector<int> next_;
    std::vector<int> head_;
    std::vector<int> level_;
    std::vector<int> iter_;
};

}  // namespace

MinCut max_flow(const FlowNetwork& net) {
    const std::size_t n = net.node_count();
    const int source = static_cast<int>(n);
    const int sink = static_cast<int>(n) + 1;
    Dinic solver(n + 2);
    for (std::size_t v = 0; v < n; ++v) {
        if (net.source_caps()[v] > 0.0)
            solver.add_arc(source, static_cast<int>(v), net.source_caps()[v], 0.0);
        if (net.sink_caps()[v] > 0.0)
            solver.add_arc(static_cast<int>(v), sink, net.sink_caps()[v], 0.0);
    }
    for (const auto& arc : net.arcs()) {
        if (arc.capacity > 0.0)
            solver.add_arc(static_cast<int>(arc.u), static_cast<int>(arc.v), arc.capacity,
                           arc.capacity);
    }

    MinCut cut;
    cut.flow_value = solver.run(source, sink);
    const auto seen = solver.reachable(source);
    cut.source_side.assign(n, false);
    for (std::size_t v = 0; v < n; ++v) cut.source_side[v] = seen[v];
    return cut;
}

}  // namespace gflbs
