#include "gflbs/prox.hpp"

#include <cmath>
#include <stdexcept>

#include "gflbs/svd.hpp"
#include "gflbs/tv.hpp"

namespace gflbs {

namespace {

void check_tau(double tau, const char* who) {
    if (!(tau >= 0.0) || !std::isfinite(tau))
        throw std::invalid_argument(std::string(who) + ": tau must be finite and nonnegative");
}

}  // namespace

SvtResult prox_nuclear_with_value(const DenseMatrix& m, double tau) {
    check_tau(tau, "prox_nuclear");
    if (tau == 0.0) return {m, 0.0};

    const SvdFactors fac = svd(m);
    SvtResult out;
    out.matrix = DenseMatrix(m.rows(), m.cols());
    for (std::size_t k = 0; k < fac.singular_values.size(); ++k) {
        const double s = soft_threshold(fac.singular_values[k], tau);
        if (s == 0.0) break;  // values are sorted nonincreasing
        out.nuclear_norm += s;
        const auto uk = fac.u.column(k);
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const double coef = s * fac.v(j, k);
            auto bj = out.matrix.column(j);
            for (std::size_t i = 0; i < m.rows(); ++i) bj[i] += coef * uk[i];
        }
    }
    return out;
}

DenseMatrix prox_nuclear(const DenseMatrix& m, double tau) {
    return prox_nuclear_with_value(m, tau).matrix;
}

std::vector<double> prox_gfl(std::span<const double> m, const NeighborGraph& graph,
                             std::span<const double> weights, const GflParams& params) {
    if (!(params.lam1 >= 0.0) || !(params.lam2 >= 0.0))
        throw std::invalid_argument("prox_gfl: parameters must be nonnegative");
    if (m.size() != static_cast<std::size_t>(graph.width) * graph.height)
        throw std::invalid_argument("prox_gfl: input size does not match graph geometry");

    std::vector<double> f = tv_prox(m, graph.edges, weights, params.lam2);
    if (params.lam1 > 0.0) {
        for (double& v : f) v = soft_threshold(v, params.lam1);
    }
    return f;
}

std::vector<double> prox_l1(std::span<const double> m, double tau) {
    check_tau(tau, "prox_l1");
    return soft_threshold(m, tau);
}

double gfl_norm(std::span<const double> f, const NeighborGraph& graph,
                std::span<const double> weights, double rho) {
    double l1 = 0.0;
    for (double v : f) l1 += std::abs(v);
    double tv = 0.0;
    for (std::size_t e = 0; e < graph.edges.size(); ++e)
        tv += weights[e] * std::abs(f[graph.edges[e].a] - f[graph.edges[e].b]);
    return l1 + rho * tv;
}

}  // namespace gflbs
