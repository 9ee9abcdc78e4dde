#include "gflbs/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "gflbs/image.hpp"
#include "gflbs/version.hpp"

namespace gflbs {

namespace {

bool has_image_extension(const std::filesystem::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext == ".pgm" || ext == ".ppm" || ext == ".pbm" || ext == ".png";
}

std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw std::runtime_error("dataset: '" + dir.string() + "' is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && has_image_extension(entry.path()))
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

bool is_ground_truth_name(const std::string& stem) {
    return stem.starts_with("hand_segmented_") || stem.starts_with("gt_");
}

// Strips the Li ("gt_") or Wallflower ("hand_segmented_") prefix so a mask
// can be matched to its frame stem.
std::string frame_stem_for_mask(const std::string& stem) {
    if (stem.starts_with("hand_segmented_")) return stem.substr(15);
    if (stem.starts_with("gt_")) return stem.substr(3);
    return stem;
}

}  // namespace

FrameSequence load_sequence(const std::filesystem::path& dir, const LoadOptions& options) {
    const auto files = list_images(dir);
    FrameSequence seq;
    for (const auto& file : files) {
        if (is_ground_truth_name(file.stem().string())) continue;
        Image img = read_image(file);
        if (options.downscale > 1) img = downscale(img, options.downscale);
        if (seq.frames.empty()) {
            seq.width = img.width;
            seq.height = img.height;
        } else if (img.width != seq.width || img.height != seq.height) {
            throw std::runtime_error("dataset: frame '" + file.string() +
                                     "' has mismatched geometry (" + std::to_string(img.width) +
                                     "x" + std::to_string(img.height) + ", expected " +
                                     std::to_string(seq.width) + "x" +
                                     std::to_string(seq.height) + ")");
        }
        seq.frames.push_back(std::move(img.pixels));
        seq.source_names.push_back(file.stem().string());
    }
    if (seq.frames.empty())
        throw std::runtime_error("dataset: no frames found in '" + dir.string() + "'");
    return seq;
}

GroundTruth load_ground_truth(const std::filesystem::path& dir, const LoadOptions& options) {
    const auto files = list_images(dir);

    // If any file carries a ground-truth prefix, only prefixed files are
    // masks (Wallflower keeps the single labeled frame next to the inputs).
    bool any_prefixed = false;
    for (const auto& file : files)
        any_prefixed = any_prefixed || is_ground_truth_name(file.stem().string());

    GroundTruth gt;
    for (const auto& file : files) {
        const std::string stem = file.stem().string();
        if (any_prefixed && !is_ground_truth_name(stem)) continue;
        Image img = read_image(file);
        if (options.downscale > 1) img = downscale(img, options.downscale);
        if (gt.frames.empty()) {
            gt.width = img.width;
            gt.height = img.height;
        } else if (img.width != gt.width || img.height != gt.height) {
            throw std::runtime_error("dataset: ground truth '" + file.string() +
                                     "' has mismatched geometry");
        }
        GroundTruthFrame frame;
        frame.name = frame_stem_for_mask(stem);
        frame.labels.resize(img.pixels.size());
        for (std::size_t i = 0; i < img.pixels.size(); ++i) {
            const double v = img.pixels[i];
            if (v <= 1e-9)
                frame.labels[i] = GtLabel::Background;
            else if (v >= 1.0 - 1e-9)
                frame.labels[i] = GtLabel::Foreground;
            else
                frame.labels[i] = GtLabel::Ignore;
        }
        gt.frames.push_back(std::move(frame));
    }
    return gt;
}

ObservationMatrix to_observation(const FrameSequence& seq) {
    if (seq.frames.empty()) throw std::invalid_argument("to_observation: empty sequence");
    const std::size_t p = static_cast<std::size_t>(seq.width) * seq.height;
    ObservationMatrix obs;
    obs.width = seq.width;
    obs.height = seq.height;
    obs.data = DenseMatrix(p, seq.frames.size());
    for (std::size_t k = 0; k < seq.frames.size(); ++k) {
        if (seq.frames[k].size() != p)
            throw std::invalid_argument("to_observation: frame size mismatch");
        auto col = obs.data.column(k);
        std::copy(seq.frames[k].begin(), seq.frames[k].end(), col.begin());
    }
    return obs;
}

std::vector<std::string> read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("manifest '" + path.string() + "': cannot open file");
    std::vector<std::string> names;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        const auto first = line.find_first_not_of(" \t\r\n");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r\n");
        names.push_back(line.substr(first, last - first + 1));
    }
    if (names.empty())
        throw std::runtime_error("manifest '" + path.string() + "': no entries");
    return names;
}

SmlSplit split_by_manifest(const FrameSequence& seq, const std::vector<std::string>& manifest) {
    std::set<std::string> train_stems;
    for (const auto& entry : manifest)
        train_stems.insert(std::filesystem::path(entry).stem().string());

    for (const auto& stem : train_stems) {
        if (std::find(seq.source_names.begin(), seq.source_names.end(), stem) ==
            seq.source_names.end())
            throw std::runtime_error("manifest entry '" + stem + "' matches no frame");
    }

    SmlSplit split;
    split.train.width = split.test.width = seq.width;
    split.train.height = split.test.height = seq.height;
    for (std::size_t k = 0; k < seq.frames.size(); ++k) {
        FrameSequence& dst =
            train_stems.count(seq.source_names[k]) ? split.train : split.test;
        dst.frames.push_back(seq.frames[k]);
        dst.source_names.push_back(seq.source_names[k]);
    }
    if (split.train.frames.empty())
        throw std::runtime_error("manifest selects no training frames");
    if (split.test.frames.empty())
        throw std::runtime_error("manifest leaves no mixed frames to decompose");
    return split;
}

void write_results(const DecompositionResult& result, std::uint32_t width,
                   std::uint32_t height, const std::vector<std::string>& names,
                   const std::filesystem::path& out_dir, double mask_eps) {
    const std::size_t p = static_cast<std::size_t>(width) * height;
    if (result.background.rows() != p)
        throw std::invalid_argument("write_results: geometry does not match result rows");
    const std::size_t n = result.background.cols();

    std::error_code ec;
    std::filesystem::create_directories(out_dir / "background", ec);
    std::filesystem::create_directories(out_dir / "mask", ec);
    if (!std::filesystem::is_directory(out_dir / "mask"))
        throw std::runtime_error("write_results: cannot create output directory '" +
                                 out_dir.string() + "'");

    for (std::size_t k = 0; k < n; ++k) {
        const std::string name =
            k < names.size() ? names[k] : "frame_" + std::to_string(k);
        Image bg{width, height, {}};
        const auto col = result.background.column(k);
        bg.pixels.assign(col.begin(), col.end());
        write_pgm(out_dir / "background" / (name + ".pgm"), bg);

        const auto mask = extract_mask(result.foreground.column(k), mask_eps);
        write_pbm(out_dir / "mask" / (name + ".pbm"), mask, width, height);
    }

    nlohmann::json j;
    j["version"] = kVersion;
    j["converged"] = result.converged;
    j["iterations"] = result.iterations;
    if (result.training_rank) j["training_rank"] = *result.training_rank;
    nlohmann::json records = nlohmann::json::array();
    for (const auto& t : result.trace) {
        records.push_back({{"iteration", t.iteration},
                           {"objective", t.objective},
                           {"lagrangian", t.lagrangian},
                           {"residual", t.residual},
                           {"mu", t.mu}});
    }
    j["trace"] = std::move(records);
    std::ofstream out(out_dir / "trace.json");
    if (!out)
        throw std::runtime_error("write_results: cannot write '" +
                                 (out_dir / "trace.json").string() + "'");
    out << j.dump(2) << "\n";
}

}  // namespace gflbs
