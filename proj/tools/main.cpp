// Command-line front end: decompose frame sequences into background and
// foreground, evaluate masks against ground truth, and generate synthetic
// datasets.
//
// Exit codes: 0 success (decompose: converged), 1 usage or I/O error,
// 2 decompose finished without reaching the residual tolerance (outputs are
// still written).

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gflbs/dataset.hpp"
#include "gflbs/metrics.hpp"
#include "gflbs/solver.hpp"
#include "gflbs/synth.hpp"
#include "gflbs/version.hpp"

namespace fs = std::filesystem;

namespace {

struct DecomposeOptions {
    std::string mode;
    std::string input;
    std::string manifest;
    std::string out;
    std::string config;
    double lambda = -1.0;  // <= 0 means "not set": resolved to 1/sqrt(max(p,n))
    double rho = 1.0;
    double sigma = 0.05;
    double mu0 = 0.0;
    double beta = 1.5;
    double mu_max = 0.0;
    double tol = 1e-7;
    std::size_t max_iters = 100;
    std::size_t fista_iters = 200;
    int downscale = 1;
    int connectivity = 4;
    double mask_eps = 0.0;
    int workers = 0;
};

// Fills flag values from a JSON config file (flat keys named like the flags);
// values given on the command line win.
void merge_config(const CLI::App& cmd, const fs::path& path, DecomposeOptions& o) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config '" + path.string() + "': cannot open file");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("config '" + path.string() + "': " + e.what());
    }
    const auto given = [&](const std::string& flag) {
        const auto* opt = cmd.get_option_no_throw("--" + flag);
        return opt != nullptr && opt->count() > 0;
    };
    const auto str = [&](const char* key, std::string& dst) {
        if (j.contains(key) && !given(key)) dst = j.at(key).get<std::string>();
    };
    const auto num = [&](const char* key, auto& dst) {
        using T = std::remove_reference_t<decltype(dst)>;
        if (j.contains(key) && !given(key)) dst = j.at(key).get<T>();
    };
    str("mode", o.mode);
    str("input", o.input);
    str("manifest", o.manifest);
    str("out", o.out);
    num("lambda", o.lambda);
    num("rho", o.rho);
    num("sigma", o.sigma);
    num("mu0", o.mu0);
    num("beta", o.beta);
    num("mu-max", o.mu_max);
    num("tol", o.tol);
    num("max-iters", o.max_iters);
    num("fista-iters", o.fista_iters);
    num("downscale", o.downscale);
    num("connectivity", o.connectivity);
    num("mask-eps", o.mask_eps);
    num("workers", o.workers);
}

gflbs::SolverConfig to_solver_config(const DecomposeOptions& o) {
    gflbs::SolverConfig cfg;
    if (o.lambda > 0.0) cfg.lambda = o.lambda;
    cfg.rho = o.rho;
    cfg.sigma = o.sigma;
    if (o.mu0 > 0.0) cfg.mu0 = o.mu0;
    cfg.beta = o.beta;
    if (o.mu_max > 0.0) cfg.mu_max = o.mu_max;
    cfg.tol = o.tol;
    cfg.max_outer_iters = o.max_iters;
    cfg.fista_iters = o.fista_iters;
    cfg.connectivity = o.connectivity;
    cfg.workers = o.workers;
    return cfg;
}

int run_decompose(const CLI::App& cmd, DecomposeOptions o) {
    if (!o.config.empty()) merge_config(cmd, o.config, o);
    if (o.mode != "uml" && o.mode != "sml")
        throw std::runtime_error("--mode must be 'uml' or 'sml'");
    if (o.input.empty()) throw std::runtime_error("--input is required");
    if (o.out.empty()) throw std::runtime_error("--out is required");
    if (o.mode == "sml" && o.manifest.empty())
        throw std::runtime_error("--manifest is required when --mode sml");
    const auto* lambda_opt = cmd.get_option_no_throw("--lambda");
    const bool lambda_given = (lambda_opt && lambda_opt->count() > 0) || o.lambda > 0.0;
    if (lambda_given && o.lambda <= 0.0)
        throw std::runtime_error("--lambda must be positive (a zero foreground weight makes "
                                 "the objective degenerate)");

    gflbs::LoadOptions load_opts;
    load_opts.downscale = o.downscale;
    const auto seq = gflbs::load_sequence(o.input, load_opts);
    const auto cfg = to_solver_config(o);

    gflbs::DecompositionResult result;
    std::vector<std::string> names;
    if (o.mode == "uml") {
        result = gflbs::solve_uml(gflbs::to_observation(seq), cfg);
        names = seq.source_names;
    } else {
        const auto manifest = gflbs::read_manifest(o.manifest);
        const auto split = gflbs::split_by_manifest(seq, manifest);
        gflbs::SmlProblem prob;
        prob.d1 = gflbs::to_observation(split.train).data;
        prob.d2 = gflbs::to_observation(split.test).data;
        prob.width = seq.width;
        prob.height = seq.height;
        result = gflbs::solve_sml(prob, cfg);
        names = split.test.source_names;
    }

    gflbs::write_results(result, seq.width, seq.height, names, o.out, o.mask_eps);

    const auto& last = result.trace.back();
    std::cout << (result.converged ? "converged" : "NOT converged") << " after "
              << result.iterations << " iterations, residual " << last.residual
              << ", objective " << last.objective << "\n";
    if (result.training_rank)
        std::cout << "training matrix numerical rank: " << *result.training_rank << "\n";
    std::cout << "results written to " << o.out << "\n";
    return result.converged ? 0 : 2;
}

int run_eval(const std::string& masks_dir, const std::string& gt_dir,
             const std::string& out_csv) {
    const auto masks = gflbs::load_sequence(masks_dir);
    const auto gt = gflbs::load_ground_truth(gt_dir);
    if (gt.frames.empty())
        throw std::runtime_error("no ground-truth masks found in '" + gt_dir + "'");
    if (gt.width != masks.width || gt.height != masks.height)
        throw std::runtime_error("mask and ground-truth geometries differ");

    std::vector<gflbs::FrameMetrics> rows;
    std::size_t matched = 0;
    for (std::size_t k = 0; k < masks.frames.size(); ++k) {
        const auto it = std::find_if(gt.frames.begin(), gt.frames.end(),
                                     [&](const gflbs::GroundTruthFrame& f) {
                                         return f.name == masks.source_names[k];
                                     });
        if (it == gt.frames.end()) {
            std::cerr << "warning: no ground truth for '" << masks.source_names[k]
                      << "', frame excluded from metrics\n";
            continue;
        }
        std::vector<std::uint8_t> mask(masks.frames[k].size());
        for (std::size_t i = 0; i < mask.size(); ++i)
            mask[i] = masks.frames[k][i] > 0.5 ? 1 : 0;
        rows.push_back({masks.source_names[k], gflbs::confusion(mask, it->labels)});
        ++matched;
    }
    for (const auto& f : gt.frames) {
        if (std::find(masks.source_names.begin(), masks.source_names.end(), f.name) ==
            masks.source_names.end())
            std::cerr << "warning: no mask for ground-truth frame '" << f.name << "'\n";
    }
    if (matched == 0)
        throw std::runtime_error("no mask matched any ground-truth frame; nothing to score");

    gflbs::write_metrics_csv(out_csv, rows);
    gflbs::ConfusionCounts total;
    for (const auto& r : rows) total += r.counts;
    std::cout << "frames evaluated: " << matched << "\n";
    std::cout << "aggregate f_score: " << gflbs::f_score(total) << "\n";
    std::cout << "aggregate misclassified: " << gflbs::misclassified(total) << "\n";
    std::cout << "report written to " << out_csv << "\n";
    return 0;
}

int run_synth(const std::string& spec_path, const std::string& out_dir,
              std::optional<std::uint64_t> seed) {
    auto spec = gflbs::read_synth_spec(spec_path);
    if (seed) spec.seed = *seed;
    const auto data = gflbs::generate(spec);
    gflbs::write_synth_dataset(data, out_dir);
    std::cout << "generated " << data.sequence.frames.size() << " frames ("
              << spec.width << "x" << spec.height << ") in " << out_dir << "\n";
    std::cout << "clamped pixels: " << data.clamped << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Background subtraction via low-rank + fused-lasso decomposition"};
    app.set_version_flag("--version", gflbs::kVersion);
    app.require_subcommand(1);

    DecomposeOptions opt;
    auto* decompose = app.add_subcommand(
        "decompose", "Decompose a frame sequence into background and foreground");
    decompose->add_option("--mode", opt.mode, "uml (unsupervised) or sml (supervised)");
    decompose->add_option("--input", opt.input, "directory of input frames");
    decompose->add_option("--manifest", opt.manifest,
                          "text file listing pure background frames (sml)");
    decompose->add_option("--out", opt.out, "output directory");
    decompose->add_option("--config", opt.config, "JSON config file (flags override)");
    decompose->add_option("--lambda", opt.lambda, "foreground weight");
    decompose->add_option("--rho", opt.rho, "fusion weight");
    decompose->add_option("--sigma", opt.sigma, "adaptive weight bandwidth");
    decompose->add_option("--mu0", opt.mu0, "initial penalty");
    decompose->add_option("--beta", opt.beta, "penalty growth factor");
    decompose->add_option("--mu-max", opt.mu_max, "penalty cap");
    decompose->add_option("--tol", opt.tol, "relative residual tolerance");
    decompose->add_option("--max-iters", opt.max_iters, "outer iteration cap");
    decompose->add_option("--fista-iters", opt.fista_iters, "inner lasso budget (sml)");
    decompose->add_option("--downscale", opt.downscale, "integer box-filter factor");
    decompose->add_option("--connectivity", opt.connectivity, "4 or 8 neighbors");
    decompose->add_option("--mask-eps", opt.mask_eps, "mask magnitude floor");
    decompose->add_option("--workers", opt.workers, "column-parallel workers (0 = cores)");

    std::string masks_dir, gt_dir, eval_out = "metrics.csv";
    auto* eval = app.add_subcommand("eval", "Score masks against ground truth");
    eval->add_option("--masks", masks_dir, "directory of predicted masks")->required();
    eval->add_option("--gt", gt_dir, "directory of ground-truth masks")->required();
    eval->add_option("--out", eval_out, "CSV report path");

    std::string spec_path, synth_out;
    std::uint64_t seed_value = 0;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
    synth->add_option("--spec", spec_path, "SynthSpec JSON file")->required();
    synth->add_option("--out", synth_out, "output dataset directory")->required();
    auto* seed_opt = synth->add_option("--seed", seed_value, "override the spec seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (decompose->parsed()) return run_decompose(*decompose, opt);
        if (eval->parsed()) return run_eval(masks_dir, gt_dir, eval_out);
        if (synth->parsed())
            return run_synth(spec_path, synth_out,
                             seed_opt->count() > 0
                                 ? std::optional<std::uint64_t>(seed_value)
                                 : std::nullopt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
