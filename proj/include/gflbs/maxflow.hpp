#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gflbs {

/// s-t network over `node_count` interior nodes. Terminal capacities live in
/// `source_caps` / `sink_caps`; pairwise arcs carry the given capacity in both
/// directions (the TV coupling is symmetric). All capacities finite and >= 0.
class FlowNetwork {
public:
    explicit FlowNetwork(std::size_t node_count);

    /// Undirected pairwise arc u-v. At most one arc per unordered pair;
    /// self-loops are rejected.
    void add_pairwise(std::uint32_t u, std::uint32_t v, double capacity);
    void add_source_cap(std::uint32_t v, double capacity);
    void add_sink_cap(std::uint32_t v, double capacity);

    std::size_t node_count() const { return source_caps_.size(); }

    struct Arc {
        std::uint32_t u, v;
        double capacity;
    };
    const std::vector<Arc>& arcs() const { return arcs_; }
    const std::vector<double>& source_caps() const { return source_caps_; }
    const std::vector<double>& sink_caps() const { return sink_caps_; }

private:
    std::vector<Arc> arcs_;
    std::vector<double> source_caps_;
    std::vector<double> sink_caps_;
};

/// Max-flow certificate. `source_side[v]` is true iff v is reachable from the
/// source in the final residual graph, i.e. the minimal source side among all
/// minimum cuts, so results are unique and deterministic.
struct MinCut {
    std::vector<bool> source_side;
    double flow_value = 0.0;
};

/// Dinic's algorithm (BFS level graph + blocking flow). Exact on the given
/// double capacities; deterministic for a fixed construction order.
MinCut max_flow(const FlowNetwork& net);

}  // namespace gflbs
