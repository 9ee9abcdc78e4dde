#include <doctest.h>

#include <stdexcept>

#include <random>

#include "gflbs/maxflow.hpp"
#include "oracles.hpp"

using gflbs::FlowNetwork;
using gflbs::MinCut;

namespace {

// Capacity of the cut certified by `cut.source_side`, for the duality check.
double cut_capacity(const FlowNetwork& net, const MinCut& cut) {
    double cap = 0.0;
    for (std::size_t v = 0; v < net.node_count(); ++v) {
        if (!cut.source_side[v]) cap += net.source_caps()[v];
        if (cut.source_side[v]) cap += net.sink_caps()[v];
    }
    for (const auto& arc : net.arcs()) {
        if (cut.source_side[arc.u] != cut.source_side[arc.v]) cap += arc.capacity;
    }
    return cap;
}

FlowNetwork random_network(std::mt19937& gen, std::size_t max_nodes) {
    std::uniform_int_distribution<std::size_t> node_dist(2, max_nodes);
    std::uniform_real_distribution<double> cap_dist(0.0, 2.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const std::size_t n = node_dist(gen);
    FlowNetwork net(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (coin(gen) < 0.7) net.add_source_cap(static_cast<std::uint32_t>(v), cap_dist(gen));
        if (coin(gen) < 0.7) net.add_sink_cap(static_cast<std::uint32_t>(v), cap_dist(gen));
    }
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (coin(gen) < 0.4)
                net.add_pairwise(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v),
                                 cap_dist(gen));
    return net;
}

}  // namespace

TEST_CASE("single bottleneck") {
    FlowNetwork net(1);
    net.add_source_cap(0, 3.0);
    net.add_sink_cap(0, 1.0);
    const auto cut = gflbs::max_flow(net);
    CHECK(cut.flow_value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cut.source_side[0]);
}

TEST_CASE("disconnected node with zero terminal capacity lands on the sink side") {
    FlowNetwork net(2);
    net.add_source_cap(0, 3.0);
    net.add_sink_cap(0, 1.0);
    // node 1 has no capacities at all
    const auto cut = gflbs::max_flow(net);
    CHECK(cut.flow_value == doctest::Approx(1.0));
    CHECK_FALSE(cut.source_side[1]);
}

TEST_CASE("two-node chain splits at the pairwise arc") {
    FlowNetwork net(2);
    net.add_source_cap(0, 2.0);
    net.add_sink_cap(1, 2.0);
    net.add_pairwise(0, 1, 0.5);
    const auto cut = gflbs::max_flow(net);
    CHECK(cut.flow_value == doctest::Approx(0.5));
    CHECK(cut.source_side[0]);
    CHECK_FALSE(cut.source_side[1]);
}

TEST_CASE("flow equals exhaustive min cut on random 4x4 grid networks") {
    std::mt19937 gen(211);
    std::uniform_real_distribution<double> cap_dist(0.0, 1.5);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t w = 4, h = 4;  // 16 interior nodes is still enumerable
        FlowNetwork net(w * h);
        for (std::size_t v = 0; v < w * h; ++v) {
            if (coin(gen) < 0.5)
                net.add_source_cap(static_cast<std::uint32_t>(v), cap_dist(gen));
            else
                net.add_sink_cap(static_cast<std::uint32_t>(v), cap_dist(gen));
        }
        for (std::size_t y = 0; y < h; ++y) {
            for (std::size_t x = 0; x < w; ++x) {
                const auto i = static_cast<std::uint32_t>(y * w + x);
                if (x + 1 < w) net.add_pairwise(i, i + 1, cap_dist(gen));
                if (y + 1 < h) net.add_pairwise(i, i + static_cast<std::uint32_t>(w), cap_dist(gen));
            }
        }
        const auto cut = gflbs::max_flow(net);
        const double best = oracles::exhaustive_min_cut(net);
        CHECK(std::abs(cut.flow_value - best) <= 1e-9);
        CHECK(std::abs(cut_capacity(net, cut) - cut.flow_value) <= 1e-9);
    }
}

TEST_CASE("strong duality and certificate consistency on random networks") {
    std::mt19937 gen(223);
    for (int rep = 0; rep < 60; ++rep) {
        const auto net = random_network(gen, 12);
        const auto cut = gflbs::max_flow(net);
        const double best = oracles::exhaustive_min_cut(net);
        REQUIRE(std::abs(cut.flow_value - best) <= 1e-9);
        REQUIRE(std::abs(cut_capacity(net, cut) - cut.flow_value) <= 1e-9);
    }
}

TEST_CASE("minimal source side is returned among optimal cuts") {
    // Both nodes could sit on either side at optimum (slack everywhere);
    // the residual-reachability rule keeps them on the sink side.
    FlowNetwork net(2);
    net.add_source_cap(0, 1.0);
    net.add_pairwise(0, 1, 1.0);
    net.add_sink_cap(1, 1.0);
    const auto cut = gflbs::max_flow(net);
    CHECK(cut.flow_value == doctest::Approx(1.0));
    CHECK_FALSE(cut.source_side[0]);
    CHECK_FALSE(cut.source_side[1]);
}

TEST_CASE("network construction rejects invalid input") {
    FlowNetwork net(3);
    CHECK_THROWS_AS(net.add_pairwise(1, 1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(net.add_pairwise(0, 3, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(net.add_pairwise(0, 1, -0.25), std::invalid_argument);
    CHECK_THROWS_AS(net.add_source_cap(0, -1.0), std::invalid_argument);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(net.add_sink_cap(0, inf), std::invalid_argument);
}
