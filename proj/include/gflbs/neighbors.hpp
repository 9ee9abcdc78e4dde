#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gflbs {

/// Unordered pixel pair, stored canonically with a < b.
struct PixelEdge {
    std::uint32_t a, b;
};

/// Spatial neighborhood over a width×height lattice. Pixel index is row-major:
/// index = y * width + x. The same convention is used when frames are
/// vectorized into observation-matrix columns.
struct NeighborGraph {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<PixelEdge> edges;
};

/// 4-connectivity lattice (right + down edges); connectivity 8 additionally
/// links the two diagonal neighbors. For connectivity 4 the edge count is
/// 2*w*h - w - h. Zero dimensions are rejected.
NeighborGraph build_neighborhood(std::uint32_t width, std::uint32_t height,
                                 int connectivity = 4);

/// Adaptive fusion weights, one per graph edge:
///   w = exp(-(d_i - d_j)^2 / (2 sigma^2))
/// evaluated on the observed intensities of one frame. sigma = 0 is defined
/// as all-zero weights (the plain sparse limit); very large sigma drives all
/// weights to 1.
std::vector<double> compute_weights(std::span<const double> frame,
                                    const NeighborGraph& graph, double sigma);

}  // namespace gflbs
