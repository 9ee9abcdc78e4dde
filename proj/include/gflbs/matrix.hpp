#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gflbs {

/// Dense column-major matrix of doubles. Columns are contiguous, which the
/// solvers rely on for per-frame (per-column) kernels.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::span<double> column(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
    std::span<const double> column(std::size_t j) const { return {data_.data() + j * rows_, rows_}; }
    std::span<const double> values() const { return data_; }
    std::span<double> values() { return data_; }

    bool all_finite() const;
    bool same_shape(const DenseMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    DenseMatrix transposed() const;

    DenseMatrix& operator+=(const DenseMatrix& other);
    DenseMatrix& operator-=(const DenseMatrix& other);
    DenseMatrix& operator*=(double s);

    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
    friend DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }
    friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// a * b, sizes must agree.
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);

/// aᵀ * b without materializing the transpose.
DenseMatrix multiply_at_b(const DenseMatrix& a, const DenseMatrix& b);

double frobenius_norm(const DenseMatrix& m);
double l1_norm(const DenseMatrix& m);
/// Sum of singular values. Computes an SVD.
double nuclear_norm(const DenseMatrix& m);

/// t_tau(x) = sign(x) * max(|x| - tau, 0). Produces exact zeros.
inline double soft_threshold(double x, double tau) {
    if (x > tau) return x - tau;
    if (x < -tau) return x + tau;
    return 0.0;
}

/// Element-wise soft threshold; tau must be nonnegative.
std::vector<double> soft_threshold(std::span<const double> x, double tau);
DenseMatrix soft_threshold(const DenseMatrix& m, double tau);

}  // namespace gflbs
