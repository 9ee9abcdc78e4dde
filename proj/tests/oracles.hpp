#pragma once

// Independent reference implementations used only by tests. Each one checks a
// production code path through a different algorithm, so none of them may
// call the implementation it verifies.

#include <cstdint>
#include <span>
#include <vector>

#include "gflbs/matrix.hpp"
#include "gflbs/maxflow.hpp"
#include "gflbs/neighbors.hpp"

namespace oracles {

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Returns
/// eigenvalues sorted nonincreasing; eigenvectors are the matching columns.
struct EigenResult {
    std::vector<double> values;
    gflbs::DenseMatrix vectors;
};
EigenResult jacobi_symmetric_eigen(const gflbs::DenseMatrix& a);

/// Minimum s-t cut value by enumerating all 2^n interior-node subsets.
double exhaustive_min_cut(const gflbs::FlowNetwork& net);

/// Accelerated projected-gradient solver for the dual of
///   min_f 1/2||f-m||^2 + lam1 ||f||_1 + lam2 sum_e w_e |f_a - f_b|,
/// run to convergence. Exact up to the stated stopping tolerance on the
/// primal iterate change.
std::vector<double> gfl_prox_dual(std::span<const double> m,
                                  std::span<const gflbs::PixelEdge> edges,
                                  std::span<const double> weights, double lam1,
                                  double lam2, std::size_t max_iters = 400000,
                                  double tol = 1e-12);

/// Exact 1-D total variation denoising (unit weights) by the direct
/// taut-string scan.
std::vector<double> tv1d_direct(std::span<const double> y, double lam);

/// Coordinate-descent lasso, run until the largest coordinate update falls
/// below tol: min_s tau ||s||_1 + 1/2 ||a s - m||^2.
std::vector<double> lasso_coordinate_descent(const gflbs::DenseMatrix& a,
                                             std::span<const double> m, double tau,
                                             double tol = 1e-13,
                                             std::size_t max_sweeps = 200000);

/// Dense Gaussian elimination with partial pivoting (square systems).
std::vector<double> solve_dense(const gflbs::DenseMatrix& a, std::span<const double> b);

/// Objective of the lasso problem.
double lasso_objective(const gflbs::DenseMatrix& a, std::span<const double> m,
                       std::span<const double> s, double tau);

/// Objective of the fused-lasso proximal problem (lam1 may be 0 for pure TV).
double gfl_prox_objective(std::span<const double> f, std::span<const double> m,
                          std::span<const gflbs::PixelEdge> edges,
                          std::span<const double> weights, double lam1, double lam2);

}  // namespace oracles
