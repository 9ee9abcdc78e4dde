#include <doctest.h>

#include <stdexcept>

#include <random>

#include "gflbs/fista.hpp"
#include "gflbs/matrix.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using gflbs::DenseMatrix;

TEST_CASE("identity design reduces to soft thresholding") {
    std::mt19937 gen(127);
    const std::size_t n = 12;
    const auto a = DenseMatrix::identity(n);
    const auto m = testutil::random_vector(n, gen);
    const double tau = 0.2;
    const auto s = gflbs::fista_lasso(a, m, tau, 100);
    const auto expected = gflbs::soft_threshold(std::span<const double>(m), tau);
    CHECK(testutil::max_abs_diff(s, expected) <= 1e-8);
}

TEST_CASE("tau = 0 on a well-conditioned square system converges to the solve") {
    std::mt19937 gen(131);
    const std::size_t n = 8;
    auto a = testutil::random_matrix(n, n, gen, -0.3, 0.3);
    for (std::size_t i = 0; i < n; ++i) a(i, i) += 2.0;  // diagonally dominant
    const auto m = testutil::random_vector(n, gen);
    const auto s = gflbs::fista_lasso(a, m, 0.0, 3000);
    const auto exact = oracles::solve_dense(a, m);
    // residual of a s - m
    std::vector<double> r(m.begin(), m.end());
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) r[i] -= a(i, j) * s[j];
    double rn = 0.0;
    for (double v : r) rn += v * v;
    CHECK(std::sqrt(rn) <= 1e-6);
    CHECK(testutil::max_abs_diff(s, exact) <= 1e-5);
}

TEST_CASE("objective matches coordinate descent on random problems") {
    std::mt19937 gen(137);
    for (int rep = 0; rep < 8; ++rep) {
        const auto a = testutil::random_matrix(30, 10, gen);
        const auto m = testutil::random_vector(30, gen);
        const double tau = 0.05 + 0.1 * rep;
        const auto s = gflbs::fista_lasso(a, m, tau, 4000);
        const auto cd = oracles::lasso_coordinate_descent(a, m, tau);
        const double fista_obj = oracles::lasso_objective(a, m, s, tau);
        const double cd_obj = oracles::lasso_objective(a, m, cd, tau);
        CHECK(fista_obj <= cd_obj + 1e-6);
        CHECK(fista_obj >= cd_obj - 1e-6);
    }
}

TEST_CASE("warm start resumes without losing ground") {
    std::mt19937 gen(139);
    const auto a = testutil::random_matrix(25, 8, gen);
    const auto m = testutil::random_vector(25, gen);
    const double tau = 0.1;
    const auto cold = gflbs::fista_lasso(a, m, tau, 400);
    const auto resumed = gflbs::fista_lasso(a, m, tau, 50, cold);
    CHECK(oracles::lasso_objective(a, m, resumed, tau) <=
          oracles::lasso_objective(a, m, cold, tau) + 1e-12);
}

TEST_CASE("zero design matrix returns the zero solution") {
    const DenseMatrix a(5, 3);
    const std::vector<double> m{1.0, -1.0, 0.5, 0.0, 2.0};
    const auto s = gflbs::fista_lasso(a, m, 0.7, 10);
    for (double v : s) CHECK(v == 0.0);
}

TEST_CASE("input validation") {
    const DenseMatrix a(4, 2, 1.0);
    const std::vector<double> m{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(gflbs::fista_lasso(a, m, 0.1, 10), std::invalid_argument);
    const std::vector<double> ok{1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_AS(gflbs::fista_lasso(a, ok, -0.1, 10), std::invalid_argument);
}
