#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "cutpoint/common.hpp"

namespace cutpoint {

using cxd = std::complex<double>;

template <typename T>
using Vec = std::vector<T>;

// Dense row-major matrix over an arbitrary scalar (double, complex<double>,
// Rational). Values are immutable in practice: operations return fresh
// matrices instead of mutating in place.
template <typename T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Matrix transpose() const {
        Matrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    bool operator==(const Matrix&) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw error("matrix product: dimension mismatch");
    Matrix<T> out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T& arc = a(r, k);
            if (arc == T(0)) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += arc * b(k, c);
        }
    return out;
}

template <typename T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw error("matrix sum: dimension mismatch");
    Matrix<T> out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) + b(r, c);
    return out;
}

template <typename T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw error("matrix difference: dimension mismatch");
    Matrix<T> out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) - b(r, c);
    return out;
}

template <typename T>
Matrix<T> operator*(const T& s, const Matrix<T>& m) {
    Matrix<T> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = s * m(r, c);
    return out;
}

template <typename T>
T trace(const Matrix<T>& m) {
    if (!m.square()) throw error("trace: matrix not square");
    T acc{};
    for (std::size_t i = 0; i < m.rows(); ++i) acc += m(i, i);
    return acc;
}

// row vector * matrix
template <typename T>
Vec<T> vec_mat(const Vec<T>& row, const Matrix<T>& m) {
    if (row.size() != m.rows()) throw error("vec_mat: dimension mismatch");
    Vec<T> out(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (row[r] == T(0)) continue;
        for (std::size_t c = 0; c < m.cols(); ++c) out[c] += row[r] * m(r, c);
    }
    return out;
}

// matrix * column vector
template <typename T>
Vec<T> mat_vec(const Matrix<T>& m, const Vec<T>& col) {
    if (col.size() != m.cols()) throw error("mat_vec: dimension mismatch");
    Vec<T> out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r] += m(r, c) * col[c];
    return out;
}

template <typename T>
T dot(const Vec<T>& a, const Vec<T>& b) {
    if (a.size() != b.size()) throw error("dot: dimension mismatch");
    T acc{};
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

using CMatrix = Matrix<cxd>;
using DMatrix = Matrix<double>;

// Conjugate transpose.
inline CMatrix adjoint(const CMatrix& m) {
    CMatrix out(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = std::conj(m(r, c));
    return out;
}

inline double max_abs(const CMatrix& m) {
    double best = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) best = std::max(best, std::abs(m(r, c)));
    return best;
}

inline double frobenius_norm(const CMatrix& m) {
    double acc = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) acc += std::norm(m(r, c));
    return std::sqrt(acc);
}

}  // namespace cutpoint
