#include "gflbs/tv.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gflbs/maxflow.hpp"

namespace gflbs {

namespace {

struct Group {
    std::vector<std::uint32_t> nodes;
    // Edges internal to the group, as (a, b, capacity) with lam2 already folded in.
    struct Edge {
        std::uint32_t a, b;
        double capacity;
    };
    std::vector<Edge> edges;
};

}  // namespace

std::vector<double> tv_prox(std::span<const double> m, std::span<const PixelEdge> edges,
                            std::span<const double> weights, double lam2) {
    if (!(lam2 >= 0.0) || !std::isfinite(lam2))
        throw std::invalid_argument("tv_prox: lam2 must be finite and nonnegative");
    if (weights.size() != edges.size())
        throw std::invalid_argument("tv_prox: one weight per edge required");

    std::vector<double> f(m.begin(), m.end());
    if (lam2 == 0.0 || m.empty()) return f;

    const std::size_t n = m.size();
    // Per-node data adjusted by the subgradients of cut edges fixed so far.
    std::vector<double> adjusted(m.begin(), m.end());

    Group root;
    root.nodes.reserve(n);
    for (std::uint32_t v = 0; v < n; ++v) root.nodes.push_back(v);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [a, b] = edges[e];
        if (a >= n || b >= n) throw std::invalid_argument("tv_prox: edge index out of range");
        if (!(weights[e] >= 0.0) || !std::isfinite(weights[e]))
            throw std::invalid_argument("tv_prox: weights must be finite and nonnegative");
        const double cap = lam2 * weights[e];
        if (cap > 0.0) root.edges.push_back({a, b, cap});
    }

    std::vector<std::uint32_t> local_id(n, 0);
    std::vector<std::uint8_t> on_source_side(n, 0);

    std::vector<Group> stack;
    stack.push_back(std::move(root));
    while (!stack.empty()) {
        Group g = std::move(stack.back());
        stack.pop_back();

        if (g.nodes.size() == 1) {
            f[g.nodes[0]] = adjusted[g.nodes[0]];
            continue;
        }

        double sum = 0.0;
        for (const auto v : g.nodes) sum += adjusted[v];
        const double level = sum / static_cast<double>(g.nodes.size());

        FlowNetwork net(g.nodes.size());
        for (std::uint32_t i = 0; i < g.nodes.size(); ++i) {
            local_id[g.nodes[i]] = i;
            const double excess = adjusted[g.nodes[i]] - level;
            if (excess > 0.0)
                net.add_source_cap(i, excess);
            else if (excess < 0.0)
                net.add_sink_cap(i, -excess);
        }
        for (const auto& e : g.edges) net.add_pairwise(local_id[e.a], local_id[e.b], e.capacity);

        const MinCut cut = max_flow(net);

        std::size_t source_count = 0;
        for (std::uint32_t i = 0; i < g.nodes.size(); ++i) {
            on_source_side[g.nodes[i]] = cut.source_side[i] ? 1 : 0;
            source_count += cut.source_side[i] ? 1 : 0;
        }
        if (source_count == 0 || source_count == g.nodes.size()) {
            // No improving split: the whole group fuses at its level.
            for (const auto v : g.nodes) f[v] = level;
            continue;
        }

        // The source side ends above the sink side. Fix the subgradient of
        // every cut edge and recurse on both halves.
        Group high, low;
        for (const auto v : g.nodes) (on_source_side[v] ? high : low).nodes.push_back(v);
        for (const auto& e : g.edges) {
            const bool a_high = on_source_side[e.a];
            const bool b_high = on_source_side[e.b];
            if (a_high && b_high) {
                high.edges.push_back(e);
            } else if (!a_high && !b_high) {
                low.edges.push_back(e);
            } else {
                const auto up = a_high ? e.a : e.b;
                const auto down = a_high ? e.b : e.a;
                adjusted[up] -= e.capacity;
                adjusted[down] += e.capacity;
            }
        }
        stack.push_back(std::move(high));
        stack.push_back(std::move(low));
    }
    return f;
}

}  // namespace gflbs
