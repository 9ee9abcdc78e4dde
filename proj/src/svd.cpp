#include "gflbs/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace gflbs {

namespace {

inline double sign_of(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

// Golub-Kahan-Reinsch on a p×n matrix with p >= n. `a` enters as the input
// and leaves as the thin U factor; w receives the singular values (unsorted,
// nonnegative), v the right factor.
void gkr_decompose(DenseMatrix& a, std::vector<double>& w, DenseMatrix& v) {
    const std::size_t p = a.rows();
    const std::size_t n = a.cols();
    w.assign(n, 0.0);
    v = DenseMatrix(n, n);
    std::vector<double> rv1(n, 0.0);

    const double eps = std::numeric_limits<double>::epsilon();
    double g = 0.0, scale = 0.0, anorm = 0.0;
    std::size_t l = 0;

    // Householder reduction to bidiagonal form.
    for (std::size_t i = 0; i < n; ++i) {
        l = i + 1;
        rv1[i] = scale * g;
        g = scale = 0.0;
        double s = 0.0;
        if (i < p) {
            for (std::size_t k = i; k < p; ++k) scale += std::abs(a(k, i));
            if (scale != 0.0) {
                for (std::size_t k = i; k < p; ++k) {
                    a(k, i) /= scale;
                    s += a(k, i) * a(k, i);
                }
                double f = a(i, i);
                g = -sign_of(std::sqrt(s), f);
                const double h = f * g - s;
                a(i, i) = f - g;
                for (std::size_t j = l; j < n; ++j) {
                    double sum = 0.0;
                    for (std::size_t k = i; k < p; ++k) sum += a(k, i) * a(k, j);
                    f = sum / h;
                    for (std::size_t k = i; k < p; ++k) a(k, j) += f * a(k, i);
                }
                for (std::size_t k = i; k < p; ++k) a(k, i) *= scale;
            }
        }
        w[i] = scale * g;
        g = scale = 0.0;
        s = 0.0;
        if (i < p && i + 1 != n) {
            for (std::size_t k = l; k < n; ++k) scale += std::abs(a(i, k));
            if (scale != 0.0) {
                for (std::size_t k = l; k < n; ++k) {
                    a(i, k) /= scale;
                    s += a(i, k) * a(i, k);
                }
                double f = a(i, l);
                g = -sign_of(std::sqrt(s), f);
                const double h = f * g - s;
                a(i, l) = f - g;
                for (std::size_t k = l; k < n; ++k) rv1[k] = a(i, k) / h;
                for (std::size_t j = l; j < p; ++j) {
                    double sum = 0.0;
                    for (std::size_t k = l; k < n; ++k) sum += a(j, k) * a(i, k);
                    for (std::size_t k = l; k < n; ++k) a(j, k) += sum * rv1[k];
                }
                for (std::size_t k = l; k < n; ++k) a(i, k) *= scale;
            }
        }
        anorm = std::max(anorm, std::abs(w[i]) + std::abs(rv1[i]));
    }

    // Accumulate right-hand transformations.
    for (std::size_t ii = n; ii-- > 0;) {
        const std::size_t i = ii;
        if (i + 1 < n) {
            if (g != 0.0) {
                // Double division avoids possible underflow.
                for (std::size_t j = l; j < n; ++j) v(j, i) = (a(i, j) / a(i, l)) / g;
                for (std::size_t j = l; j < n; ++j) {
                    double sum = 0.0;
                    for (std::size_t k = l; k < n; ++k) sum += a(i, k) * v(k, j);
                    for (std::size_t k = l; k < n; ++k) v(k, j) += sum * v(k, i);
                }
            }
            for (std::size_t j = l; j < n; ++j) v(i, j) = v(j, i) = 0.0;
        }
        v(i, i) = 1.0;
        g = rv1[i];
        l = i;
    }

    // Accumulate left-hand transformations (thin U in place of a).
    for (std::size_t ii = std::min(p, n); ii-- > 0;) {
        const std::size_t i = ii;
        l = i + 1;
        g = w[i];
        for (std::size_t j = l; j < n; ++j) a(i, j) = 0.0;
        if (g != 0.0) {
            g = 1.0 / g;
            for (std::size_t j = l; j < n; ++j) {
                double sum = 0.0;
                for (std::size_t k = l; k < p; ++k) sum += a(k, i) * a(k, j);
                const double f = (sum / a(i, i)) * g;
                for (std::size_t k = i; k < p; ++k) a(k, j) += f * a(k, i);
            }
            for (std::size_t j = i; j < p; ++j) a(j, i) *= g;
        } else {
            for (std::size_t j = i; j < p; ++j) a(j, i) = 0.0;
        }
        a(i, i) += 1.0;
    }

    // Diagonalize the bidiagonal form: implicit-shift QR with deflation.
    constexpr int kMaxIterations = 75;
    for (std::size_t kk = n; kk-- > 0;) {
        const std::size_t k = kk;
        for (int its = 1;; ++its) {
            bool flag = true;
            std::size_t nm = 0;
            std::size_t ls = 0;
            for (std::size_t lt = k + 1; lt-- > 0;) {
                ls = lt;
                if (ls == 0 || std::abs(rv1[ls]) <= eps * anorm) {
                    flag = false;
                    break;
                }
                nm = ls - 1;
                if (std::abs(w[nm]) <= eps * anorm) break;
            }
            if (flag) {
                // rv1[ls] is annihilated because w[ls-1] is negligible.
                double c = 0.0, s = 1.0;
                for (std::size_t i = ls; i <= k; ++i) {
                    double f = s * rv1[i];
                    rv1[i] = c * rv1[i];
                    if (std::abs(f) <= eps * anorm) break;
                    g = w[i];
                    double h = std::hypot(f, g);
                    w[i] = h;
                    h = 1.0 / h;
                    c = g * h;
                    s = -f * h;
                    for (std::size_t j = 0; j < p; ++j) {
                        const double y = a(j, nm);
                        const double z = a(j, i);
                        a(j, nm) = y * c + z * s;
                        a(j, i) = z * c - y * s;
                    }
                }
            }
            double z = w[k];
            if (ls == k) {
                if (z < 0.0) {
                    w[k] = -z;
                    for (std::size_t j = 0; j < n; ++j) v(j, k) = -v(j, k);
                }
                break;
            }
            if (its == kMaxIterations) {
                throw std::runtime_error("svd: QR iteration failed to converge for " +
                                         std::to_string(p) + "x" + std::to_string(n) +
                                         " matrix");
            }
            double x = w[ls];
            nm = k - 1;
            double y = w[nm];
            g = rv1[nm];
            double h = rv1[k];
            double f = ((y - z) * (y + z) + (g - h) * (g + h)) / (2.0 * h * y);
            g = std::hypot(f, 1.0);
            f = ((x - z) * (x + z) + h * ((y / (f + sign_of(g, f))) - h)) / x;
            double c = 1.0, s = 1.0;
            for (std::size_t j = ls; j <= nm; ++j) {
                const std::size_t i = j + 1;
                g = rv1[i];
                y = w[i];
                h = s * g;
                g = c * g;
                z = std::hypot(f, h);
                rv1[j] = z;
                c = f / z;
                s = h / z;
                f = x * c + g * s;
                g = g * c - x * s;
                h = y * s;
                y *= c;
                for (std::size_t jj = 0; jj < n; ++jj) {
                    x = v(jj, j);
                    z = v(jj, i);
                    v(jj, j) = x * c + z * s;
                    v(jj, i) = z * c - x * s;
                }
                z = std::hypot(f, h);
                w[j] = z;
                if (z != 0.0) {
                    z = 1.0 / z;
                    c = f * z;
                    s = h * z;
                }
                f = c * g + s * y;
                x = c * y - s * g;
                for (std::size_t jj = 0; jj < p; ++jj) {
                    y = a(jj, j);
                    z = a(jj, i);
                    a(jj, j) = y * c + z * s;
                    a(jj, i) = z * c - y * s;
                }
            }
            rv1[ls] = 0.0;
            rv1[k] = f;
            w[k] = x;
        }
    }
}

void sort_descending(DenseMatrix& u, std::vector<double>& w, DenseMatrix& v) {
    const std::size_t r = w.size();
    for (std::size_t i = 0; i < r; ++i) {
        std::size_t best = i;
        for (std::size_t j = i + 1; j < r; ++j) {
            if (w[j] > w[best]) best = j;
        }
        if (best == i) continue;
        std::swap(w[i], w[best]);
        for (std::size_t k = 0; k < u.rows(); ++k) std::swap(u(k, i), u(k, best));
        for (std::size_t k = 0; k < v.rows(); ++k) std::swap(v(k, i), v(k, best));
    }
}

}  // namespace

SvdFactors svd(const DenseMatrix& m) {
    if (!m.all_finite()) throw std::invalid_argument("svd: input has non-finite entries");
    SvdFactors out;
    if (m.rows() == 0 || m.cols() == 0) {
        out.u = DenseMatrix(m.rows(), 0);
        out.v = DenseMatrix(m.cols(), 0);
        return out;
    }
    if (m.rows() >= m.cols()) {
        out.u = m;
        gkr_decompose(out.u, out.singular_values, out.v);
        sort_descending(out.u, out.singular_values, out.v);
    } else {
        DenseMatrix work = m.transposed();
        gkr_decompose(work, out.singular_values, out.u);
        sort_descending(work, out.singular_values, out.u);
        out.v = std::move(work);
    }
    return out;
}

}  // namespace gflbs
