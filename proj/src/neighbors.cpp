#include "gflbs/neighbors.hpp"

#include <cmath>
#include <stdexcept>

namespace gflbs {

NeighborGraph build_neighborhood(std::uint32_t width, std::uint32_t height,
                                 int connectivity) {
    if (width == 0 || height == 0)
        throw std::invalid_argument("build_neighborhood: dimensions must be >= 1");
    if (connectivity != 4 && connectivity != 8)
        throw std::invalid_argument("build_neighborhood: connectivity must be 4 or 8");

    NeighborGraph g{width, height, {}};
    const std::size_t expected = 2ull * width * height - width - height;
    g.edges.reserve(connectivity == 4 ? expected
                                      : expected + 2ull * (width - 1) * (height - 1));
    for (std::uint32_t y = 0; y < height; ++y) {
        for (std::uint32_t x = 0; x < width; ++x) {
            const std::uint32_t i = y * width + x;
            if (x + 1 < width) g.edges.push_back({i, i + 1});
            if (y + 1 < height) g.edges.push_back({i, i + width});
            if (connectivity == 8 && y + 1 < height) {
                if (x + 1 < width) g.edges.push_back({i, i + width + 1});
                if (x >= 1) g.edges.push_back({i, i + width - 1});
            }
        }
    }
    return g;
}

std::vector<double> compute_weights(std::span<const double> frame,
                                    const NeighborGraph& graph, double sigma) {
    if (frame.size() != static_cast<std::size_t>(graph.width) * graph.height)
        throw std::invalid_argument("compute_weights: frame size does not match graph geometry");
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("compute_weights: sigma must be finite and nonnegative");

    std::vector<double> w(graph.edges.size());
    if (sigma == 0.0) return w;  // defined as the all-zero (plain sparse) limit

    const double inv = 1.0 / (2.0 * sigma * sigma);
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
        const double diff = frame[graph.edges[e].a] - frame[graph.edges[e].b];
        w[e] = std::exp(-diff * diff * inv);
    }
    return w;
}

}  // namespace gflbs
