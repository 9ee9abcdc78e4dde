#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gflbs/matrix.hpp"
#include "gflbs/observation.hpp"

namespace gflbs {

/// Solver parameters. lambda, mu0 and mu_max default to data-dependent
/// values resolved at solve time:
///   lambda = 1/sqrt(max(p, n)), mu0 = 1.25/sigma_1(D), mu_max = mu0 * 1e7.
/// All tolerances are relative to intensities normalized to [0, 1].
struct SolverConfig {
    std::optional<double> lambda;    // foreground weight, > 0 once resolved
    double rho = 1.0;                // fusion weight
    double sigma = 0.05;             // weight bandwidth, in [0,1] intensity units
    std::optional<double> mu0;       // initial penalty, > 0
    double beta = 1.5;               // penalty growth factor, > 1
    std::optional<double> mu_max;    // penalty cap, > mu0
    double tol = 1e-7;               // relative residual threshold
    std::size_t max_outer_iters = 100;
    std::size_t fista_iters = 200;   // inner budget for the supervised S-step
    int connectivity = 4;            // 4 or 8
    int workers = 0;                 // column-parallel workers, 0 = all cores
};

struct TraceRecord {
    std::size_t iteration = 0;
    double objective = 0.0;    // surrogate: ||B||_* + lambda ||F||_gfl (or ||S||_1 + ...)
    double lagrangian = 0.0;   // augmented Lagrangian at the current iterate
    double residual = 0.0;     // relative constraint residual
    double mu = 0.0;
};

struct DecompositionResult {
    DenseMatrix background;                  // B, or D1*S for the supervised model
    DenseMatrix foreground;                  // F (or F2)
    DenseMatrix dual;                        // Y
    std::optional<DenseMatrix> coefficients; // S, supervised model only
    std::vector<TraceRecord> trace;
    bool converged = false;
    std::size_t iterations = 0;
    /// Numerical rank of the training matrix at 1e-6 relative threshold
    /// (supervised model only, diagnostic).
    std::optional<std::size_t> training_rank;
};

/// Supervised decomposition input: d1 holds pure background frames, d2 the
/// mixed frames; both are stacks of width×height frames with a shared p.
struct SmlProblem {
    DenseMatrix d1;
    DenseMatrix d2;
    std::uint32_t width = 0;
    std::uint32_t height = 0;
};

/// Unsupervised decomposition D = B + F:
///   min ||B||_* + lambda ||F||_gfl  s.t.  D = B + F
/// by inexact augmented-Lagrangian iteration: singular value thresholding for
/// B, per-column fused-lasso prox for F, dual ascent on Y, and a geometric
/// penalty schedule. Non-convergence returns the last state with
/// converged = false rather than throwing.
DecompositionResult solve_uml(const ObservationMatrix& d, const SolverConfig& cfg);

/// Supervised decomposition D2 = D1 S + F2:
///   min ||S||_1 + lambda ||F2||_gfl  s.t.  D2 = D1 S + F2
/// with a per-column FISTA lasso step for S and the same foreground and dual
/// updates as the unsupervised path. background = D1 * S.
DecompositionResult solve_sml(const SmlProblem& prob, const SolverConfig& cfg);

/// Foreground mask from one foreground column: mask[i] = |f_i| > eps, with
/// eps = 0 relying on the exact zeros the fused-lasso prox produces.
std::vector<std::uint8_t> extract_mask(std::span<const double> foreground_column,
                                       double eps = 0.0);

}  // namespace gflbs
