#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gflbs/observation.hpp"
#include "gflbs/solver.hpp"

namespace gflbs {

/// Ordered stack of same-geometry frames with per-frame identifiers
/// (filename stems for loaded sequences).
struct FrameSequence {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<std::vector<double>> frames;
    std::vector<std::string> source_names;
};

/// Per-pixel ground-truth label.
enum class GtLabel : std::uint8_t { Background = 0, Foreground = 1, Ignore = 2 };

struct GroundTruthFrame {
    std::string name;  // frame stem this mask belongs to
    std::vector<GtLabel> labels;
};

struct GroundTruth {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<GroundTruthFrame> frames;
};

struct LoadOptions {
    int downscale = 1;
};

/// Loads every image in `dir` in lexicographic filename order. Files named
/// hand_segmented_* are skipped (they are ground truth in the Wallflower
/// layout). Empty directories, unreadable files and mixed geometries are
/// distinct errors naming the offender.
FrameSequence load_sequence(const std::filesystem::path& dir,
                            const LoadOptions& options = {});

/// Loads ground-truth masks from `dir`. Pixel convention: 0 = background,
/// 255 = foreground, anything else = ignore. Each mask is matched to the
/// frame whose stem equals the mask stem, or the mask stem minus a leading
/// "gt_" (Li layout) or "hand_segmented_" (Wallflower layout, where a single
/// labeled frame per sequence is the norm). Frames without a mask are simply
/// absent and must not be scored.
GroundTruth load_ground_truth(const std::filesystem::path& dir,
                              const LoadOptions& options = {});

/// Column k = row-major vectorization of frame k.
ObservationMatrix to_observation(const FrameSequence& seq);

/// One filename (or stem) per line; '#' comments and blank lines ignored.
/// Names the manifest file on error.
std::vector<std::string> read_manifest(const std::filesystem::path& path);

/// Splits a sequence into pure-background training frames (listed in the
/// manifest, by stem or filename) and the remaining mixed frames, preserving
/// order. Unknown manifest entries are an error.
struct SmlSplit {
    FrameSequence train;
    FrameSequence test;
};
SmlSplit split_by_manifest(const FrameSequence& seq,
                           const std::vector<std::string>& manifest);

/// Writes per-frame outputs under out_dir: background/<name>.pgm (8-bit
/// grayscale, clamped), mask/<name>.pbm (binary, from the exact zeros of the
/// foreground), and trace.json with the convergence table and solver info.
void write_results(const DecompositionResult& result, std::uint32_t width,
                   std::uint32_t height, const std::vector<std::string>& names,
                   const std::filesystem::path& out_dir, double mask_eps = 0.0);

}  // namespace gflbs
