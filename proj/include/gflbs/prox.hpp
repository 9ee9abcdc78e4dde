#pragma once

#include <span>
#include <vector>

#include "gflbs/matrix.hpp"
#include "gflbs/neighbors.hpp"

namespace gflbs {

/// Per-iteration fused-lasso parameters: lam1 scales the value penalty,
/// lam2 the weighted difference penalty. Both nonnegative.
struct GflParams {
    double lam1 = 0.0;
    double lam2 = 0.0;
};

/// Singular value thresholding: minimizer of tau*||B||_* + 1/2||B - m||_F².
/// SVD of m with singular values soft-thresholded by tau.
DenseMatrix prox_nuclear(const DenseMatrix& m, double tau);

/// SVT returning the thresholded singular values as well, so callers can log
/// the nuclear norm of the result without a second decomposition.
struct SvtResult {
    DenseMatrix matrix;
    double nuclear_norm = 0.0;
};
SvtResult prox_nuclear_with_value(const DenseMatrix& m, double tau);

/// Exact minimizer of
///   lam1 ||f||_1 + lam2 Σ_e w_e |f_i - f_j| + 1/2 ||f - m||²,
/// computed as element-wise soft-thresholding of the TV proximal solution.
/// The TV-then-threshold order is what makes the composition exact; outputs
/// contain bit-exact zeros.
std::vector<double> prox_gfl(std::span<const double> m, const NeighborGraph& graph,
                             std::span<const double> weights, const GflParams& params);

/// Plain element-wise l1 prox (soft threshold).
std::vector<double> prox_l1(std::span<const double> m, double tau);

/// Value of the generalized fused lasso norm of one column:
///   ||f||_1 + rho * Σ_e w_e |f_i - f_j|.
double gfl_norm(std::span<const double> f, const NeighborGraph& graph,
                std::span<const double> weights, double rho);

}  // namespace gflbs
