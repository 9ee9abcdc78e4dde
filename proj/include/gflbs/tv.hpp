#pragma once

#include <span>
#include <vector>

#include "gflbs/neighbors.hpp"

namespace gflbs {

/// Exact minimizer of the weighted total-variation proximal problem
///
///   f̂ = argmin_f  lam2 * Σ_e w_e |f_i - f_j|  +  1/2 ||f - m||²
///
/// computed by recursive group splitting: each group with a common tentative
/// value is tested with one max-flow whose terminal capacities encode the
/// deviation of each entry from the group value and whose pairwise capacities
/// are lam2 * w_e. The minimum cut either splits the group in two (recurse)
/// or certifies that the whole group fuses; fused groups take the mean of
/// their entries adjusted by the subgradients of the cut edges fixed so far.
///
/// lam2 = 0 short-circuits to f̂ = m. weights must be >= 0, one per edge.
std::vector<double> tv_prox(std::span<const double> m,
                            std::span<const PixelEdge> edges,
                            std::span<const double> weights, double lam2);

}  // namespace gflbs
