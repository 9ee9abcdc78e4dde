#pragma once

#include <vector>

#include "gflbs/matrix.hpp"

namespace gflbs {

/// Thin SVD m = U * diag(singular_values) * Vᵀ with r = min(rows, cols).
/// U is rows×r and V is cols×r, both with orthonormal columns; singular
/// values are nonnegative and sorted nonincreasing.
struct SvdFactors {
    DenseMatrix u;
    std::vector<double> singular_values;
    DenseMatrix v;
};

/// Golub-Kahan-Reinsch SVD: Householder bidiagonalization followed by
/// implicit-shift QR on the bidiagonal. Deterministic for a fixed input.
/// Throws std::invalid_argument on non-finite input and std::runtime_error
/// (naming the matrix dimensions) if the QR iteration fails to converge.
SvdFactors svd(const DenseMatrix& m);

}  // namespace gflbs
