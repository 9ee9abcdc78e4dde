#include "gflbs/metrics.hpp"

#include <fstream>
#include <stdexcept>

namespace gflbs {

ConfusionCounts confusion(std::span<const std::uint8_t> mask, std::span<const GtLabel> gt) {
    if (mask.size() != gt.size())
        throw std::invalid_argument("confusion: mask and ground truth geometry mismatch");
    ConfusionCounts c;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        switch (gt[i]) {
            case GtLabel::Ignore:
                break;
            case GtLabel::Foreground:
                mask[i] ? ++c.tp : ++c.fn;
                break;
            case GtLabel::Background:
                mask[i] ? ++c.fp : ++c.tn;
                break;
        }
    }
    return c;
}

double f_score(const ConfusionCounts& c) {
    const std::uint64_t denom = 2 * c.tp + c.fp + c.fn;
    if (denom == 0) {
        // No foreground anywhere: a perfect (empty) detection.
        return 1.0;
    }
    return 2.0 * static_cast<double>(c.tp) / static_cast<double>(denom);
}

std::uint64_t misclassified(const ConfusionCounts& c) { return c.fp + c.fn; }

void write_metrics_csv(const std::filesystem::path& path,
                       const std::vector<FrameMetrics>& frames, double runtime_seconds,
                       std::size_t iterations) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("metrics: cannot write '" + path.string() + "'");
    out << "name,pixels,tp,fp,fn,tn,f_score,misclassified,runtime_seconds,iterations\n";
    ConfusionCounts total;
    for (const auto& fm : frames) {
        const auto& c = fm.counts;
        out << fm.name << "," << (c.tp + c.fp + c.fn + c.tn) << "," << c.tp << "," << c.fp
            << "," << c.fn << "," << c.tn << "," << f_score(c) << "," << misclassified(c)
            << ",,\n";
        total += c;
    }
    out << "aggregate," << (total.tp + total.fp + total.fn + total.tn) << "," << total.tp
        << "," << total.fp << "," << total.fn << "," << total.tn << "," << f_score(total)
        << "," << misclassified(total) << "," << runtime_seconds << "," << iterations << "\n";
    if (!out) throw std::runtime_error("metrics: write failed for '" + path.string() + "'");
}

}  // namespace gflbs
