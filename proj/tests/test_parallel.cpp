#include <doctest.h>

#include <random>

#include "gflbs/parallel.hpp"
#include "gflbs/solver.hpp"
#include "gflbs/synth.hpp"
#include "test_util.hpp"

TEST_CASE("parallel_for covers every index exactly once") {
    std::vector<int> hits(257, 0);
    gflbs::parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    std::vector<int> serial_hits(257, 0);
    gflbs::parallel_for(serial_hits.size(), 1, [&](std::size_t i) { serial_hits[i] += 1; });
    CHECK(hits == serial_hits);
}

TEST_CASE("solver results are identical for any worker count") {
    gflbs::SynthSpec spec;
    spec.width = 10;
    spec.height = 10;
    spec.n_frames = 8;
    spec.background_rank = 2;
    spec.noise_std = 0.003;
    spec.seed = 17;
    spec.blocks = {{3, 2, 2, 5, 5, 0.35}, {6, 4, 4, 5, 5, 0.35}};
    const auto obs = gflbs::to_observation(gflbs::generate(spec).sequence);

    gflbs::SolverConfig serial;
    serial.workers = 1;
    serial.max_outer_iters = 12;
    gflbs::SolverConfig parallel = serial;
    parallel.workers = 4;

    const auto a = gflbs::solve_uml(obs, serial);
    const auto b = gflbs::solve_uml(obs, parallel);
    CHECK(a.background == b.background);
    CHECK(a.foreground == b.foreground);
    CHECK(a.dual == b.dual);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t k = 0; k < a.trace.size(); ++k) {
        CHECK(a.trace[k].objective == b.trace[k].objective);
        CHECK(a.trace[k].residual == b.trace[k].residual);
    }
}
