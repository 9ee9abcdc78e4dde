#pragma once

#include <cstdint>

#include "gflbs/matrix.hpp"

namespace gflbs {

/// p×n stack of vectorized frames: column k is the row-major vectorization of
/// frame k, p = width * height. Intensities are normalized to [0, 1].
struct ObservationMatrix {
    DenseMatrix data;
    std::uint32_t width = 0;
    std::uint32_t height = 0;
};

}  // namespace gflbs
