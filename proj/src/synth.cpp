#include "gflbs/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "gflbs/image.hpp"

namespace gflbs {

namespace {

// Deterministic uniform/gaussian draws on top of the standardized mt19937_64
// stream, so outputs are reproducible across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

void validate(const SynthSpec& spec) {
    if (spec.width == 0 || spec.height == 0 || spec.n_frames == 0)
        throw std::invalid_argument("synth: width, height and n_frames must be >= 1");
    const std::size_t p = static_cast<std::size_t>(spec.width) * spec.height;
    if (spec.background_rank > std::min(p, spec.n_frames))
        throw std::invalid_argument("synth: background_rank exceeds min(p, n)");
    if (!(spec.noise_std >= 0.0))
        throw std::invalid_argument("synth: noise_std must be nonnegative");
    for (const auto& blk : spec.blocks) {
        if (blk.frame >= spec.n_frames)
            throw std::invalid_argument("synth: block frame index out of range");
        if (blk.w == 0 || blk.h == 0 || blk.x + blk.w > spec.width ||
            blk.y + blk.h > spec.height)
            throw std::invalid_argument("synth: block rectangle outside the frame");
    }
}

}  // namespace

SynthData generate(const SynthSpec& spec) {
    validate(spec);
    const std::size_t p = static_cast<std::size_t>(spec.width) * spec.height;
    const std::size_t n = spec.n_frames;
    Rng rng(spec.seed);

    // Background: a static smooth carrier plus rank-1 oscillation modes with
    // zero-mean spatial profiles and whole-period temporal sinusoids. Every
    // frame carries the same constant mass, and distinct frequencies keep the
    // factors independent, so the rank is exact and well conditioned.
    DenseMatrix b(p, n);
    const double period = static_cast<double>(spec.temporal_period ? spec.temporal_period : n);
    for (std::size_t r = 0; r < spec.background_rank; ++r) {
        const double phase_x = rng.uniform() * 2.0 * std::numbers::pi;
        const double phase_y = rng.uniform() * 2.0 * std::numbers::pi;
        const double phase_t = rng.uniform() * 2.0 * std::numbers::pi;
        const double fx = 1.0 + static_cast<double>(r % 3);
        const double fy = 1.0 + static_cast<double>(r / 3 % 3);

        std::vector<double> spatial(p);
        for (std::uint32_t y = 0; y < spec.height; ++y) {
            for (std::uint32_t x = 0; x < spec.width; ++x) {
                const double sx =
                    std::sin(2.0 * std::numbers::pi * fx * (x + 0.5) / spec.width + phase_x);
                const double sy =
                    std::sin(2.0 * std::numbers::pi * fy * (y + 0.5) / spec.height + phase_y);
                spatial[static_cast<std::size_t>(y) * spec.width + x] =
                    r == 0 ? 1.5 + 0.5 * sx * sy : sx * sy;
            }
        }
        // Oscillation amplitudes sum below the carrier minimum, keeping the
        // total positive for the multiplicative range scaling.
        const double amp =
            spec.background_rank > 1 ? 0.9 / static_cast<double>(spec.background_rank - 1)
                                     : 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            const double temporal =
                r == 0 ? 1.0
                       : amp * std::sin(2.0 * std::numbers::pi * static_cast<double>(r) *
                                            (t + 0.5) / period +
                                        phase_t);
            auto col = b.column(t);
            for (std::size_t i = 0; i < p; ++i) col[i] += spatial[i] * temporal;
        }
    }
    // Multiplicative scaling keeps the rank exact; the ceiling of 0.65 leaves
    // headroom in [0,0.7] for block amplitudes and noise without clipping.
    double peak = 0.0;
    for (double v : b.values()) peak = std::max(peak, v);
    if (peak > 0.0) b *= 0.65 / peak;

    DenseMatrix f(p, n);
    for (const auto& blk : spec.blocks) {
        auto col = f.column(blk.frame);
        for (std::uint32_t dy = 0; dy < blk.h; ++dy)
            for (std::uint32_t dx = 0; dx < blk.w; ++dx)
                col[static_cast<std::size_t>(blk.y + dy) * spec.width + blk.x + dx] +=
                    blk.amplitude;
    }

    SynthData data;
    data.sequence.width = spec.width;
    data.sequence.height = spec.height;
    data.ground_truth.width = spec.width;
    data.ground_truth.height = spec.height;
    for (std::size_t t = 0; t < n; ++t) {
        std::vector<double> frame(p);
        const auto bc = b.column(t);
        const auto fc = f.column(t);
        for (std::size_t i = 0; i < p; ++i) {
            double v = bc[i] + fc[i];
            if (spec.noise_std > 0.0) v += spec.noise_std * rng.gaussian();
            if (v < 0.0 || v > 1.0) {
                ++data.clamped;
                v = std::clamp(v, 0.0, 1.0);
            }
            frame[i] = v;
        }
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%04zu", t);
        data.sequence.frames.push_back(std::move(frame));
        data.sequence.source_names.emplace_back(name);

        GroundTruthFrame gt;
        gt.name = name;
        gt.labels.assign(p, GtLabel::Background);
        for (std::size_t i = 0; i < p; ++i)
            if (fc[i] != 0.0) gt.labels[i] = GtLabel::Foreground;
        data.ground_truth.frames.push_back(std::move(gt));
    }
    data.true_background = std::move(b);
    data.true_foreground = std::move(f);
    return data;
}

SynthSpec read_synth_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("synth spec '" + path.string() + "': cannot open file");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("synth spec '" + path.string() + "': " + e.what());
    }
    SynthSpec spec;
    try {
        spec.width = j.at("width").get<std::uint32_t>();
        spec.height = j.at("height").get<std::uint32_t>();
        spec.n_frames = j.at("n_frames").get<std::size_t>();
        spec.background_rank = j.value("background_rank", std::size_t{1});
        spec.noise_std = j.value("noise_std", 0.0);
        spec.seed = j.value("seed", std::uint64_t{0});
        spec.temporal_period = j.value("temporal_period", std::size_t{0});
        for (const auto& bj : j.value("blocks", nlohmann::json::array())) {
            ForegroundBlock blk;
            blk.frame = bj.at("frame").get<std::size_t>();
            blk.x = bj.at("x").get<std::uint32_t>();
            blk.y = bj.at("y").get<std::uint32_t>();
            blk.w = bj.at("w").get<std::uint32_t>();
            blk.h = bj.at("h").get<std::uint32_t>();
            blk.amplitude = bj.at("amplitude").get<double>();
            spec.blocks.push_back(blk);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("synth spec '" + path.string() + "': " + e.what());
    }
    validate(spec);
    return spec;
}

void write_synth_dataset(const SynthData& data, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir / "frames", ec);
    std::filesystem::create_directories(out_dir / "gt", ec);
    if (!std::filesystem::is_directory(out_dir / "gt"))
        throw std::runtime_error("synth: cannot create output directory '" + out_dir.string() +
                                 "'");
    const auto& seq = data.sequence;
    for (std::size_t k = 0; k < seq.frames.size(); ++k) {
        Image img{seq.width, seq.height, seq.frames[k]};
        write_pgm(out_dir / "frames" / (seq.source_names[k] + ".pgm"), img);

        const auto& gt = data.ground_truth.frames[k];
        Image mask{seq.width, seq.height, std::vector<double>(gt.labels.size(), 0.0)};
        for (std::size_t i = 0; i < gt.labels.size(); ++i)
            mask.pixels[i] = gt.labels[i] == GtLabel::Foreground ? 1.0 : 0.0;
        write_pgm(out_dir / "gt" / (gt.name + ".pgm"), mask);
    }
}

}  // namespace gflbs
