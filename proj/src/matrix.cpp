#include "gflbs/matrix.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gflbs/svd.hpp"

namespace gflbs {

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool DenseMatrix::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t i = 0; i < rows_; ++i) t(j, i) = (*this)(i, j);
    return t;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
    if (!same_shape(other)) throw std::invalid_argument("matrix shape mismatch in +=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
    if (!same_shape(other)) throw std::invalid_argument("matrix shape mismatch in -=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch in multiply");
    DenseMatrix c(a.rows(), b.cols());
    // column-major: accumulate c[:,j] += b(k,j) * a[:,k]
    for (std::size_t j = 0; j < b.cols(); ++j) {
        auto cj = c.column(j);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double bkj = b(k, j);
            if (bkj == 0.0) continue;
            auto ak = a.column(k);
            for (std::size_t i = 0; i < a.rows(); ++i) cj[i] += bkj * ak[i];
        }
    }
    return c;
}

DenseMatrix multiply_at_b(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("matrix shape mismatch in multiply_at_b");
    DenseMatrix c(a.cols(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        auto bj = b.column(j);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            auto ai = a.column(i);
            double s = 0.0;
            for (std::size_t k = 0; k < a.rows(); ++k) s += ai[k] * bj[k];
            c(i, j) = s;
        }
    }
    return c;
}

double frobenius_norm(const DenseMatrix& m) {
    double s = 0.0;
    for (double v : m.values()) s += v * v;
    return std::sqrt(s);
}

double l1_norm(const DenseMatrix& m) {
    double s = 0.0;
    for (double v : m.values()) s += std::abs(v);
    return s;
}

double nuclear_norm(const DenseMatrix& m) {
    if (m.size() == 0) return 0.0;
    const SvdFactors f = svd(m);
    return std::accumulate(f.singular_values.begin(), f.singular_values.end(), 0.0);
}

std::vector<double> soft_threshold(std::span<const double> x, double tau) {
    if (!(tau >= 0.0)) throw std::invalid_argument("soft_threshold: tau must be nonnegative");
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = soft_threshold(x[i], tau);
    return out;
}

DenseMatrix soft_threshold(const DenseMatrix& m, double tau) {
    if (!(tau >= 0.0)) throw std::invalid_argument("soft_threshold: tau must be nonnegative");
    DenseMatrix out(m.rows(), m.cols());
    auto src = m.values();
    auto dst = out.values();
    for (std::size_t k = 0; k < src.size(); ++k) dst[k] = soft_threshold(src[k], tau);
    return out;
}

}  // namespace gflbs
