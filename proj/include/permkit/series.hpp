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

#ifndef PERMKIT_SERIES_HPP
#define PERMKIT_SERIES_HPP

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "permkit/combinatorics.hpp"
#include "permkit/numerics.hpp"

namespace permkit {

/// Multivariate power series truncated at per-variable degree caps.
/// Coefficients are stored densely in row-major mixed-radix order (the last
/// variable varies fastest), so index(e1 + e2) = index(e1) + index(e2).
///
/// T is either mpq_class (exact) or Complex. Mixing rings is a type error.
template <typename T>
class TruncatedSeries {
public:
    explicit TruncatedSeries(MultiIndex caps);

    static TruncatedSeries constant(const MultiIndex &caps, const T &value);
    /// The series z_i; zero if cap_i = 0.
    static TruncatedSeries variable(const MultiIndex &caps, std::size_t i);
    /// c * z^e; zero if e exceeds the caps.
    static TruncatedSeries monomial(const MultiIndex &caps, const MultiIndex &e, const T &c);

    std::size_t num_vars() const noexcept { return caps_.size(); }
    const MultiIndex &caps() const noexcept { return caps_; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    /// [z^p]; throws ExceedsCap outside the box.
    const T &coefficient(const MultiIndex &p) const;
    void set_coefficient(const MultiIndex &p, const T &value);
    bool within_cap(const MultiIndex &p) const;

    const T &operator[](std::size_t flat) const { return coeffs_[flat]; }
    T &operator[](std::size_t flat) { return coeffs_[flat]; }
    std::size_t index_of(const MultiIndex &p) const;
    MultiIndex exponent_of(std::size_t flat) const;
    const std::vector<T> &coefficients() const noexcept { return coeffs_; }

    const T &constant_term() const { return coeffs_[0]; }

    TruncatedSeries &operator+=(const TruncatedSeries &other);
    TruncatedSeries &operator-=(const TruncatedSeries &other);
    TruncatedSeries &operator*=(const T &s);

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries &b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries &b) { return a -= b; }
    friend TruncatedSeries operator*(TruncatedSeries a, const T &s) { return a *= s; }
    friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b) { return a.mul(b); }

    TruncatedSeries mul(const TruncatedSeries &other) const;
    TruncatedSeries inverse() const;
    /// Square root with constant term 1.
    TruncatedSeries sqrt() const;
    TruncatedSeries sqrt_inverse() const;
    TruncatedSeries exp() const;
    TruncatedSeries log() const;
    TruncatedSeries pow(unsigned k) const;

    /// Substitutes z_i -> w_i z_i.
    TruncatedSeries rescale(const std::vector<T> &w) const;

    bool operator==(const TruncatedSeries &) const = default;

private:
    void check_compatible(const TruncatedSeries &other) const;
    /// Calls f(flat index of e') for every e' <= e, e' given as flat index of e.
    template <typename F>
    void for_each_below(std::size_t flat, F &&f) const;
    unsigned total_degree(std::size_t flat) const;

    MultiIndex caps_;
    std::vector<std::size_t> strides_;
    std::vector<T> coeffs_;
};

/// f(w) = sum_k f_k w^k for a series w with zero constant term.
template <typename T>
TruncatedSeries<T> compose(const std::vector<T> &f, const TruncatedSeries<T> &w);

template <typename T>
using SeriesMatrix = std::vector<std::vector<TruncatedSeries<T>>>;

/// Determinant of a square matrix of series (dim <= 8), expanded over
/// permutations by dynamic programming on column subsets.
template <typename T>
TruncatedSeries<T> det_series(const SeriesMatrix<T> &m);

/// Lifts a constant matrix into series entries.
template <typename T>
SeriesMatrix<T> constant_series_matrix(const Matrix<T> &a, const MultiIndex &caps);

template <typename T>
SeriesMatrix<T> series_matrix_product(const SeriesMatrix<T> &a, const SeriesMatrix<T> &b);

/// Diag(z_{offset}, ..., z_{offset+m-1}) as a series matrix.
template <typename T>
SeriesMatrix<T> diagonal_variables(const MultiIndex &caps, std::size_t offset, std::size_t m);

/// I - M.
template <typename T>
SeriesMatrix<T> identity_minus(const SeriesMatrix<T> &m);

/// Largest coefficient discrepancy |a - b| (Complex) or 0/1 for exact rings.
double max_coefficient_error(const TruncatedSeries<Complex> &a, const TruncatedSeries<Complex> &b);

extern template class TruncatedSeries<mpq_class>;
extern template class TruncatedSeries<Complex>;

}  // namespace permkit

#endif
