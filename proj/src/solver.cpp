#include "gflbs/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "gflbs/fista.hpp"
#include "gflbs/neighbors.hpp"
#include "gflbs/parallel.hpp"
#include "gflbs/prox.hpp"
#include "gflbs/svd.hpp"

namespace gflbs {

namespace {

struct ResolvedConfig {
    double lambda, rho, sigma, mu0, beta, mu_max, tol;
    std::size_t max_outer_iters, fista_iters;
    int connectivity, workers;
};

ResolvedConfig resolve(const SolverConfig& cfg, std::size_t p, std::size_t n,
                       double top_singular_value) {
    ResolvedConfig r;
    r.lambda = cfg.lambda.value_or(1.0 / std::sqrt(static_cast<double>(std::max(p, n))));
    r.rho = cfg.rho;
    r.sigma = cfg.sigma;
    r.mu0 = cfg.mu0.value_or(top_singular_value > 0.0 ? 1.25 / top_singular_value : 1.25);
    r.beta = cfg.beta;
    r.mu_max = cfg.mu_max.value_or(r.mu0 * 1e7);
    r.tol = cfg.tol;
    r.max_outer_iters = cfg.max_outer_iters;
    r.fista_iters = cfg.fista_iters;
    r.connectivity = cfg.connectivity;
    r.workers = cfg.workers;

    if (!(r.lambda >= 0.0) || !std::isfinite(r.lambda))
        throw std::invalid_argument("solver: lambda must be finite and nonnegative");
    if (!(r.rho >= 0.0) || !std::isfinite(r.rho))
        throw std::invalid_argument("solver: rho must be finite and nonnegative");
    if (!(r.sigma >= 0.0) || !std::isfinite(r.sigma))
        throw std::invalid_argument("solver: sigma must be finite and nonnegative");
    if (!(r.mu0 > 0.0) || !std::isfinite(r.mu0))
        throw std::invalid_argument("solver: mu0 must be positive");
    if (!(r.beta > 1.0)) throw std::invalid_argument("solver: beta must exceed 1");
    if (!(r.mu_max > r.mu0)) throw std::invalid_argument("solver: mu_max must exceed mu0");
    if (!(r.tol > 0.0)) throw std::invalid_argument("solver: tol must be positive");
    if (r.max_outer_iters == 0)
        throw std::invalid_argument("solver: max_outer_iters must be >= 1");
    return r;
}

// out = a - b + scale * c, element-wise.
void combine(const DenseMatrix& a, const DenseMatrix& b, double scale, const DenseMatrix& c,
             DenseMatrix& out) {
    auto av = a.values();
    auto bv = b.values();
    auto cv = c.values();
    auto ov = out.values();
    for (std::size_t k = 0; k < ov.size(); ++k) ov[k] = av[k] - bv[k] + scale * cv[k];
}

double inner_product(const DenseMatrix& a, const DenseMatrix& b) {
    double s = 0.0;
    auto av = a.values();
    auto bv = b.values();
    for (std::size_t k = 0; k < av.size(); ++k) s += av[k] * bv[k];
    return s;
}

std::vector<std::vector<double>> per_frame_weights(const DenseMatrix& frames,
                                                   const NeighborGraph& graph, double sigma,
                                                   int workers) {
    std::vector<std::vector<double>> w(frames.cols());
    parallel_for(frames.cols(), workers,
                 [&](std::size_t l) { w[l] = compute_weights(frames.column(l), graph, sigma); });
    return w;
}

double top_singular(const DenseMatrix& m) {
    const SvdFactors f = svd(m);
    return f.singular_values.empty() ? 0.0 : f.singular_values[0];
}

}  // namespace

DecompositionResult solve_uml(const ObservationMatrix& d, const SolverConfig& cfg) {
    const std::size_t p = d.data.rows();
    const std::size_t n = d.data.cols();
    if (p == 0 || n == 0) throw std::invalid_argument("solve_uml: empty observation matrix");
    if (p != static_cast<std::size_t>(d.width) * d.height)
        throw std::invalid_argument("solve_uml: geometry does not match row count");
    if (!d.data.all_finite())
        throw std::invalid_argument("solve_uml: observations must be finite");

    const ResolvedConfig rc = resolve(cfg, p, n, top_singular(d.data));
    const NeighborGraph graph = build_neighborhood(d.width, d.height, rc.connectivity);
    const auto weights = per_frame_weights(d.data, graph, rc.sigma, rc.workers);

    const DenseMatrix& dd = d.data;
    DenseMatrix b(p, n), f(p, n), y(p, n);
    DenseMatrix m1(p, n), m2(p, n), r(p, n);
    double mu = rc.mu0;
    const double d_norm = frobenius_norm(dd);
    const double denom = d_norm > 0.0 ? d_norm : 1.0;

    DecompositionResult result;
    for (std::size_t k = 1; k <= rc.max_outer_iters; ++k) {
        combine(dd, f, 1.0 / mu, y, m1);
        SvtResult svt = prox_nuclear_with_value(m1, 1.0 / mu);
        b = std::move(svt.matrix);

        combine(dd, b, 1.0 / mu, y, m2);
        const GflParams params{rc.lambda / mu, rc.lambda * rc.rho / mu};
        parallel_for(n, rc.workers, [&](std::size_t l) {
            const auto fl = prox_gfl(m2.column(l), graph, weights[l], params);
            auto dst = f.column(l);
            std::copy(fl.begin(), fl.end(), dst.begin());
        });

        combine(dd, b, -1.0, f, r);
        auto yv = y.values();
        auto rv = r.values();
        for (std::size_t idx = 0; idx < yv.size(); ++idx) yv[idx] += mu * rv[idx];

        double gfl_total = 0.0;
        for (std::size_t l = 0; l < n; ++l)
            gfl_total += gfl_norm(f.column(l), graph, weights[l], rc.rho);
        const double residual = frobenius_norm(r) / denom;
        const double objective = svt.nuclear_norm + rc.lambda * gfl_total;
        const double rr = frobenius_norm(r);
        const double lagrangian = objective + inner_product(y, r) + 0.5 * mu * rr * rr;
        result.trace.push_back({k, objective, lagrangian, residual, mu});

        if (residual <= rc.tol) {
            result.converged = true;
            break;
        }
        mu = std::min(rc.beta * mu, rc.mu_max);
    }

    result.background = std::move(b);
    result.foreground = std::move(f);
    result.dual = std::move(y);
    result.iterations = result.trace.size();
    return result;
}

DecompositionResult solve_sml(const SmlProblem& prob, const SolverConfig& cfg) {
    const std::size_t p = prob.d2.rows();
    const std::size_t n1 = prob.d1.cols();
    const std::size_t n2 = prob.d2.cols();
    if (p == 0 || n2 == 0) throw std::invalid_argument("solve_sml: empty mixed-frame matrix");
    if (n1 == 0) throw std::invalid_argument("solve_sml: at least one training frame required");
    if (prob.d1.rows() != p)
        throw std::invalid_argument("solve_sml: training and mixed frames differ in pixel count");
    if (p != static_cast<std::size_t>(prob.width) * prob.height)
        throw std::invalid_argument("solve_sml: geometry does not match row count");
    if (!prob.d1.all_finite() || !prob.d2.all_finite())
        throw std::invalid_argument("solve_sml: observations must be finite");

    const ResolvedConfig rc = resolve(cfg, p, n2, top_singular(prob.d2));
    const NeighborGraph graph = build_neighborhood(prob.width, prob.height, rc.connectivity);
    const auto weights = per_frame_weights(prob.d2, graph, rc.sigma, rc.workers);

    // Numerical rank of the training matrix, reported as a diagnostic for the
    // span assumption.
    std::size_t d1_rank = 0;
    {
        const SvdFactors fac = svd(prob.d1);
        if (!fac.singular_values.empty()) {
            const double cutoff = 1e-6 * fac.singular_values[0];
            for (double s : fac.singular_values)
                if (s > cutoff) ++d1_rank;
        }
    }

    const DenseMatrix& d2 = prob.d2;
    DenseMatrix s(n1, n2), f2(p, n2), y(p, n2), b2(p, n2);
    DenseMatrix m(p, n2), m2(p, n2), r(p, n2);
    double mu = rc.mu0;
    const double d_norm = frobenius_norm(d2);
    const double denom = d_norm > 0.0 ? d_norm : 1.0;

    DecompositionResult result;
    for (std::size_t k = 1; k <= rc.max_outer_iters; ++k) {
        combine(d2, f2, 1.0 / mu, y, m);
        parallel_for(n2, rc.workers, [&](std::size_t l) {
            const auto sl = fista_lasso(prob.d1, m.column(l), 1.0 / mu, rc.fista_iters,
                                        s.column(l));
            auto dst = s.column(l);
            std::copy(sl.begin(), sl.end(), dst.begin());
        });
        b2 = multiply(prob.d1, s);

        combine(d2, b2, 1.0 / mu, y, m2);
        const GflParams params{rc.lambda / mu, rc.lambda * rc.rho / mu};
        parallel_for(n2, rc.workers, [&](std::size_t l) {
            const auto fl = prox_gfl(m2.column(l), graph, weights[l], params);
            auto dst = f2.column(l);
            std::copy(fl.begin(), fl.end(), dst.begin());
        });

        combine(d2, b2, -1.0, f2, r);
        auto yv = y.values();
        auto rv = r.values();
        for (std::size_t idx = 0; idx < yv.size(); ++idx) yv[idx] += mu * rv[idx];

        double gfl_total = 0.0;
        for (std::size_t l = 0; l < n2; ++l)
            gfl_total += gfl_norm(f2.column(l), graph, weights[l], rc.rho);
        const double residual = frobenius_norm(r) / denom;
        const double objective = l1_norm(s) + rc.lambda * gfl_total;
        const double rr = frobenius_norm(r);
        const double lagrangian = objective + inner_product(y, r) + 0.5 * mu * rr * rr;
        result.trace.push_back({k, objective, lagrangian, residual, mu});

        if (residual <= rc.tol) {
            result.converged = true;
            break;
        }
        mu = std::min(rc.beta * mu, rc.mu_max);
    }

    result.background = std::move(b2);
    result.foreground = std::move(f2);
    result.dual = std::move(y);
    result.coefficients = std::move(s);
    result.iterations = result.trace.size();
    result.training_rank = d1_rank;
    return result;
}

std::vector<std::uint8_t> extract_mask(std::span<const double> foreground_column, double eps) {
    if (!(eps >= 0.0)) throw std::invalid_argument("extract_mask: eps must be nonnegative");
    std::vector<std::uint8_t> mask(foreground_column.size());
    for (std::size_t i = 0; i < mask.size(); ++i)
        mask[i] = std::abs(foreground_column[i]) > eps ? 1 : 0;
    return mask;
}

}  // namespace gflbs
