#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gflbs/dataset.hpp"

namespace gflbs {

/// Pixel confusion counts with foreground as the positive class.
/// Ignore-labeled pixels are excluded from every count.
struct ConfusionCounts {
    std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;

    ConfusionCounts& operator+=(const ConfusionCounts& o) {
        tp += o.tp;
        fp += o.fp;
        fn += o.fn;
        tn += o.tn;
        return *this;
    }
};

/// mask: nonzero = foreground. Throws on geometry mismatch.
ConfusionCounts confusion(std::span<const std::uint8_t> mask,
                          std::span<const GtLabel> gt);

/// F = 2 tp / (2 tp + fp + fn); 1.0 when mask and ground truth are both
/// empty (denominator 0 with foreground present in the ground truth would
/// give 0, but such counts cannot occur).
double f_score(const ConfusionCounts& c);

/// fp + fn.
std::uint64_t misclassified(const ConfusionCounts& c);

struct FrameMetrics {
    std::string name;
    ConfusionCounts counts;
};

/// CSV report: one row per evaluated frame plus an aggregate row; columns are
/// name, evaluated pixel count, tp, fp, fn, tn, f_score, misclassified.
/// Optional trailing metadata columns carry runtime and iteration counts.
void write_metrics_csv(const std::filesystem::path& path,
                       const std::vector<FrameMetrics>& frames,
                       double runtime_seconds = 0.0, std::size_t iterations = 0);

}  // namespace gflbs
