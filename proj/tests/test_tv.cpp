#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <random>

#include "gflbs/neighbors.hpp"
#include "gflbs/tv.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using gflbs::PixelEdge;

namespace {

std::vector<PixelEdge> chain_edges(std::size_t n) {
    std::vector<PixelEdge> e;
    for (std::uint32_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return e;
}

}  // namespace

TEST_CASE("two-node chain: split case") {
    // m = (0,4), w = 1, lam2 = 1: each end moves one unit toward the other.
    const std::vector<double> m{0.0, 4.0};
    const auto edges = chain_edges(2);
    const std::vector<double> w{1.0};
    const auto f = gflbs::tv_prox(m, edges, w, 1.0);
    CHECK(f[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f[1] == doctest::Approx(3.0).epsilon(1e-12));
    const auto oracle = oracles::gfl_prox_dual(m, edges, w, 0.0, 1.0);
    CHECK(testutil::max_abs_diff(f, oracle) <= 1e-8);
}

TEST_CASE("two-node chain: fusion case") {
    const std::vector<double> m{1.0, 2.0};
    const auto edges = chain_edges(2);
    const std::vector<double> w{1.0};
    const auto f = gflbs::tv_prox(m, edges, w, 1.0);
    CHECK(f[0] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(f[1] == doctest::Approx(1.5).epsilon(1e-12));
    const auto oracle = oracles::gfl_prox_dual(m, edges, w, 0.0, 1.0);
    CHECK(testutil::max_abs_diff(f, oracle) <= 1e-8);
}

TEST_CASE("lam2 = 0 short-circuits to the input") {
    std::mt19937 gen(31);
    const auto m = testutil::random_vector(40, gen);
    const auto edges = chain_edges(40);
    const std::vector<double> w(edges.size(), 0.7);
    const auto f = gflbs::tv_prox(m, edges, w, 0.0);
    CHECK(f == m);
}

TEST_CASE("matches the projected-dual oracle on random grids") {
    std::mt19937 gen(37);
    std::uniform_int_distribution<std::uint32_t> dim(1, 5);
    std::uniform_real_distribution<double> lam_dist(0.0, 0.5);
    std::uniform_real_distribution<double> w_dist(0.0, 1.0);
    for (int rep = 0; rep < 30; ++rep) {
        const auto width = dim(gen), height = dim(gen);
        const auto graph = gflbs::build_neighborhood(width, height);
        const auto m = testutil::random_vector(std::size_t(width) * height, gen);
        std::vector<double> w(graph.edges.size());
        for (auto& x : w) x = w_dist(gen);
        const double lam2 = lam_dist(gen);
        const auto f = gflbs::tv_prox(m, graph.edges, w, lam2);
        const auto oracle = oracles::gfl_prox_dual(m, graph.edges, w, 0.0, lam2);
        CAPTURE(width);
        CAPTURE(height);
        CAPTURE(lam2);
        CHECK(testutil::max_abs_diff(f, oracle) <= 1e-5);
    }
}

TEST_CASE("mean conservation on connected graphs") {
    std::mt19937 gen(41);
    for (int rep = 0; rep < 10; ++rep) {
        const auto graph = gflbs::build_neighborhood(4, 4);
        const auto m = testutil::random_vector(16, gen);
        std::vector<double> w(graph.edges.size(), 0.8);
        const auto f = gflbs::tv_prox(m, graph.edges, w, 0.3);
        double sm = 0.0, sf = 0.0;
        for (double v : m) sm += v;
        for (double v : f) sf += v;
        CHECK(std::abs(sf - sm) <= 1e-6);
    }
}

TEST_CASE("TV value is nonincreasing in lam2") {
    std::mt19937 gen(43);
    const auto graph = gflbs::build_neighborhood(5, 4);
    const auto m = testutil::random_vector(20, gen);
    std::vector<double> w(graph.edges.size());
    std::uniform_real_distribution<double> w_dist(0.0, 1.0);
    for (auto& x : w) x = w_dist(gen);

    double prev_tv = std::numeric_limits<double>::infinity();
    for (double lam2 : {0.0, 0.05, 0.1, 0.2, 0.4, 0.8, 1.6}) {
        const auto f = gflbs::tv_prox(m, graph.edges, w, lam2);
        double tv = 0.0;
        for (std::size_t e = 0; e < graph.edges.size(); ++e)
            tv += w[e] * std::abs(f[graph.edges[e].a] - f[graph.edges[e].b]);
        CHECK(tv <= prev_tv + 1e-9);
        prev_tv = tv;
    }
}

TEST_CASE("level sets are nested") {
    std::mt19937 gen(47);
    const auto graph = gflbs::build_neighborhood(5, 5);
    const auto m = testutil::random_vector(25, gen);
    std::vector<double> w(graph.edges.size(), 0.5);
    const auto f = gflbs::tv_prox(m, graph.edges, w, 0.25);
    for (double a1 = -1.0; a1 < 1.0; a1 += 0.25) {
        const double a2 = a1 + 0.25;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i] >= a2) CHECK(f[i] >= a1);
        }
    }
}

TEST_CASE("1-D chains match the direct taut-string solver") {
    std::mt19937 gen(53);
    std::uniform_int_distribution<std::size_t> len(1, 200);
    std::uniform_real_distribution<double> lam_dist(0.0, 1.0);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = len(gen);
        const auto m = testutil::random_vector(n, gen);
        const auto edges = chain_edges(n);
        const std::vector<double> w(edges.size(), 1.0);
        const double lam = lam_dist(gen);
        const auto f = gflbs::tv_prox(m, edges, w, lam);
        const auto direct = oracles::tv1d_direct(m, lam);
        CAPTURE(n);
        CAPTURE(lam);
        CHECK(testutil::max_abs_diff(f, direct) <= 1e-8);
    }
}

TEST_CASE("taut-string oracle agrees with the dual oracle on small chains") {
    // Guards the oracle itself: two independent references must agree.
    std::mt19937 gen(59);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 8;
        const auto m = testutil::random_vector(n, gen);
        const auto edges = chain_edges(n);
        const std::vector<double> w(edges.size(), 1.0);
        const double lam = 0.15 * (rep + 1);
        const auto a = oracles::tv1d_direct(m, lam);
        const auto b = oracles::gfl_prox_dual(m, edges, w, 0.0, lam);
        CHECK(testutil::max_abs_diff(a, b) <= 1e-7);
    }
}

TEST_CASE("disconnected graphs solve per component") {
    // Two 2-node components; the second has no edge to the first.
    const std::vector<double> m{0.0, 4.0, 10.0, 10.5};
    const std::vector<PixelEdge> edges{{0, 1}, {2, 3}};
    const std::vector<double> w{1.0, 1.0};
    const auto f = gflbs::tv_prox(m, edges, w, 1.0);
    CHECK(f[0] == doctest::Approx(1.0));
    CHECK(f[1] == doctest::Approx(3.0));
    CHECK(f[2] == doctest::Approx(10.25));
    CHECK(f[3] == doctest::Approx(10.25));
}

TEST_CASE("tv_prox input validation") {
    const std::vector<double> m{1.0, 2.0};
    const auto edges = chain_edges(2);
    const std::vector<double> w{0.5};
    CHECK_THROWS_AS(gflbs::tv_prox(m, edges, w, -1.0), std::invalid_argument);
    const std::vector<double> bad_w{0.5, 0.5};
    CHECK_THROWS_AS(gflbs::tv_prox(m, edges, bad_w, 1.0), std::invalid_argument);
}
