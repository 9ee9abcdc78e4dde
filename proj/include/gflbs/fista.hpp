#pragma once

#include <span>
#include <vector>

#include "gflbs/matrix.hpp"

namespace gflbs {

/// Accelerated proximal gradient for the lasso
///   min_s  tau ||s||_1 + 1/2 ||a s - m||²
/// with a fixed iteration budget. The step size comes from an upper bound on
/// the spectral norm of aᵀa (max absolute column sum of aᵀa). Momentum is
/// restarted whenever the objective would increase, so the reported iterate
/// sequence is monotone. An optional warm start resumes from a previous
/// solution.
std::vector<double> fista_lasso(const DenseMatrix& a, std::span<const double> m,
                                double tau, std::size_t iters,
                                std::span<const double> warm_start = {});

}  // namespace gflbs
