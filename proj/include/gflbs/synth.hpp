#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "gflbs/dataset.hpp"
#include "gflbs/matrix.hpp"

namespace gflbs {

/// Axis-aligned foreground rectangle inserted into one frame.
struct ForegroundBlock {
    std::size_t frame = 0;
    std::uint32_t x = 0, y = 0, w = 0, h = 0;
    double amplitude = 0.0;
};

struct SynthSpec {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::size_t n_frames = 0;
    std::size_t background_rank = 1;
    std::vector<ForegroundBlock> blocks;
    double noise_std = 0.0;
    std::uint64_t seed = 0;
    /// Temporal period of the background profiles in frames; 0 means one
    /// period across the whole sequence. A period no longer than a training
    /// prefix makes every later background an exact copy of a training
    /// frame's background, the well-posed supervised setting.
    std::size_t temporal_period = 0;
};

struct SynthData {
    FrameSequence sequence;       // D = clamp(B* + F* + noise)
    GroundTruth ground_truth;     // block pixels marked foreground
    DenseMatrix true_background;  // B*, exact rank = background_rank
    DenseMatrix true_foreground;  // F*
    std::size_t clamped = 0;      // pixels clipped to [0,1]; 0 when nothing clipped
};

/// Deterministic generator: the background is a sum of `background_rank`
/// separable smooth positive components scaled multiplicatively into
/// [0, 0.7] (so the rank is exact by construction), blocks add their
/// amplitude, and Gaussian noise is applied before clamping to [0, 1].
SynthData generate(const SynthSpec& spec);

/// JSON round trip for the CLI `synth` command. Keys mirror the field names;
/// blocks are arrays of {frame, x, y, w, h, amplitude}.
SynthSpec read_synth_spec(const std::filesystem::path& path);

/// Writes the dataset in the layout the loader reads: frames/*.pgm plus
/// gt/*.pgm (0 background / 255 foreground).
void write_synth_dataset(const SynthData& data, const std::filesystem::path& out_dir);

}  // namespace gflbs
