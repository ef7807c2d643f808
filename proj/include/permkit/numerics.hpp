// Copyright 2026 The permkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PERMKIT_NUMERICS_HPP
#define PERMKIT_NUMERICS_HPP

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "permkit/error.hpp"

namespace permkit {

using Complex = std::complex<double>;

/// Dense row-major matrix. Square matrices are the common case; rectangular
/// and empty shapes appear as results of row/column repetition.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) {
            throw Error(ErrorCode::DimensionMismatch, "entry count does not match shape");
        }
    }

    static Matrix square(std::size_t dim) { return Matrix(dim, dim); }

    static Matrix identity(std::size_t dim) {
        Matrix m(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = T(1);
        }
        return m;
    }

    static Matrix all_ones(std::size_t dim) {
        Matrix m(dim, dim);
        for (auto &v : m.data_) {
            v = T(1);
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    /// Dimension of a square matrix.
    std::size_t dim() const {
        if (!is_square()) {
            throw Error(ErrorCode::NotSquare, "matrix is not square");
        }
        return rows_;
    }

    T &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> data() const noexcept { return data_; }
    std::span<T> data() noexcept { return data_; }

    bool operator==(const Matrix &other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using ComplexMatrix = Matrix<Complex>;

template <typename T>
Matrix<T> transpose(const Matrix<T> &a) {
    Matrix<T> t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            t(j, i) = a(i, j);
        }
    }
    return t;
}

template <typename T>
Matrix<T> matrix_product(const Matrix<T> &a, const Matrix<T> &b) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "inner dimensions differ in matrix product");
    }
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T &aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

template <typename T>
Matrix<T> operator+(const Matrix<T> &a, const Matrix<T> &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "shapes differ in matrix sum");
    }
    Matrix<T> c = a;
    for (std::size_t k = 0; k < c.data().size(); ++k) {
        c.data()[k] += b.data()[k];
    }
    return c;
}

template <typename T>
Matrix<T> operator-(const Matrix<T> &a, const Matrix<T> &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "shapes differ in matrix difference");
    }
    Matrix<T> c = a;
    for (std::size_t k = 0; k < c.data().size(); ++k) {
        c.data()[k] -= b.data()[k];
    }
    return c;
}

template <typename T>
Matrix<T> scale(const Matrix<T> &a, const T &s) {
    Matrix<T> c = a;
    for (auto &v : c.data()) {
        v *= s;
    }
    return c;
}

template <typename T>
Matrix<T> diag_from_vector(std::span<const T> values) {
    Matrix<T> d(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        d(i, i) = values[i];
    }
    return d;
}

/// Block-diagonal matrix [[a, 0], [0, b]].
template <typename T>
Matrix<T> direct_sum(const Matrix<T> &a, const Matrix<T> &b) {
    Matrix<T> c(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            c(i, j) = a(i, j);
        }
    }
    for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            c(a.rows() + i, a.cols() + j) = b(i, j);
        }
    }
    return c;
}

ComplexMatrix adjoint(const ComplexMatrix &a);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// Comparison under the project tolerance policy: relative when the reference
/// magnitude exceeds one, absolute otherwise.
inline double scaled_error(Complex value, Complex reference) {
    double scale_by = std::max({1.0, std::abs(reference), std::abs(value)});
    return std::abs(value - reference) / scale_by;
}

inline bool approx_equal(Complex value, Complex reference, double tolerance = 1e-8) {
    return scaled_error(value, reference) <= tolerance;
}

/// Determinant by LU factorization with partial pivoting.
Complex determinant(const ComplexMatrix &a);

/// Largest singular value, by power iteration on A^dagger A.
double spectral_norm(const ComplexMatrix &a);

struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;  // columns are eigenvectors
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix. Stops once the
/// off-diagonal Frobenius norm is at most `tolerance` times max(1, ||H||_F).
HermitianEigen hermitian_eigen(const ComplexMatrix &h, double tolerance = 1e-12);

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues within rounding of zero are clamped.
ComplexMatrix hermitian_sqrt(const ComplexMatrix &h);

/// Square matrix checked on construction to satisfy ||U^dagger U - I||_max <= 1e-10.
class UnitaryMatrix {
public:
    static constexpr double kTolerance = 1e-10;

    explicit UnitaryMatrix(ComplexMatrix u);

    const ComplexMatrix &matrix() const noexcept { return u_; }
    std::size_t dim() const { return u_.dim(); }
    Complex operator()(std::size_t r, std::size_t c) const { return u_(r, c); }

private:
    ComplexMatrix u_;
};

/// Unitary dilation [[B, (I - B B^dagger)^{1/2}], [(I - B^dagger B)^{1/2}, -B^dagger]]
/// of a contraction B.
UnitaryMatrix embed_contraction(const ComplexMatrix &b);

/// Integer power by repeated squaring; exact for the exponents used here.
template <typename T>
T int_pow(T base, unsigned exponent) {
    T result(1);
    while (exponent > 0) {
        if (exponent & 1U) {
            result *= base;
        }
        exponent >>= 1U;
        if (exponent > 0) {
            base *= base;
        }
    }
    return result;
}

}  // namespace permkit

#endif
