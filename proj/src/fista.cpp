#include "gflbs/fista.hpp"

#include <cmath>
#include <stdexcept>

namespace gflbs {

namespace {

// tau ||s||_1 + 1/2 sᵀGs - ⟨atm, s⟩ + const; the constant ½||m||² is dropped
// since only comparisons matter.
double partial_objective(std::span<const double> s, const DenseMatrix& gram,
                         std::span<const double> atm, double tau) {
    const std::size_t n = s.size();
    double quad = 0.0, lin = 0.0, l1 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (s[j] == 0.0) continue;
        double gs = 0.0;
        const auto gj = gram.column(j);
        for (std::size_t i = 0; i < n; ++i) gs += gj[i] * s[i];
        quad += s[j] * gs;
        lin += atm[j] * s[j];
        l1 += std::abs(s[j]);
    }
    return 0.5 * quad - lin + tau * l1;
}

void gradient(std::span<const double> s, const DenseMatrix& gram,
              std::span<const double> atm, std::span<double> out) {
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i) out[i] = -atm[i];
    for (std::size_t j = 0; j < n; ++j) {
        const double sj = s[j];
        if (sj == 0.0) continue;
        const auto gj = gram.column(j);
        for (std::size_t i = 0; i < n; ++i) out[i] += gj[i] * sj;
    }
}

}  // namespace

std::vector<double> fista_lasso(const DenseMatrix& a, std::span<const double> m,
                                double tau, std::size_t iters,
                                std::span<const double> warm_start) {
    if (!(tau >= 0.0) || !std::isfinite(tau))
        throw std::invalid_argument("fista_lasso: tau must be finite and nonnegative");
    if (m.size() != a.rows())
        throw std::invalid_argument("fista_lasso: rhs length does not match matrix rows");
    const std::size_t n = a.cols();
    if (n == 0) return {};
    if (!warm_start.empty() && warm_start.size() != n)
        throw std::invalid_argument("fista_lasso: warm start has wrong length");

    const DenseMatrix gram = multiply_at_b(a, a);
    // Upper bound on the spectral norm of aᵀa: max absolute column sum.
    double lip = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double colsum = 0.0;
        for (double v : gram.column(j)) colsum += std::abs(v);
        lip = std::max(lip, colsum);
    }
    if (lip == 0.0) return std::vector<double>(n, 0.0);  // a is zero: prox is 0

    std::vector<double> atm(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        const auto aj = a.column(j);
        for (std::size_t i = 0; i < a.rows(); ++i) s += aj[i] * m[i];
        atm[j] = s;
    }

    std::vector<double> x(n, 0.0);
    if (!warm_start.empty()) x.assign(warm_start.begin(), warm_start.end());
    std::vector<double> y = x;
    std::vector<double> grad(n), z(n);
    double t = 1.0;
    double fx = partial_objective(x, gram, atm, tau);

    const double step = 1.0 / lip;
    for (std::size_t it = 0; it < iters; ++it) {
        gradient(y, gram, atm, grad);
        for (std::size_t i = 0; i < n; ++i) z[i] = soft_threshold(y[i] - step * grad[i], tau * step);
        double fz = partial_objective(z, gram, atm, tau);
        if (fz > fx) {
            // Momentum overshot: restart from x with a plain proximal step,
            // which cannot increase the objective.
            gradient(x, gram, atm, grad);
            for (std::size_t i = 0; i < n; ++i)
                z[i] = soft_threshold(x[i] - step * grad[i], tau * step);
            fz = partial_objective(z, gram, atm, tau);
            t = 1.0;
        }
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        const double momentum = (t - 1.0) / t_next;
        for (std::size_t i = 0; i < n; ++i) y[i] = z[i] + momentum * (z[i] - x[i]);
        x.swap(z);
        fx = fz;
        t = t_next;
    }
    return x;
}

}  // namespace gflbs
