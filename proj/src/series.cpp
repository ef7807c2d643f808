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

#include "permkit/series.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <string>

namespace permkit {

namespace {

/// Visits every e <= bound (componentwise), passing the flat offset of e.
template <typename F>
void for_each_in_box(const std::vector<unsigned> &bound, const std::vector<std::size_t> &strides, F &&f) {
    const std::size_t n = bound.size();
    std::vector<unsigned> cur(n, 0);
    std::size_t flat = 0;
    while (true) {
        f(flat);
        std::size_t i = n;
        while (true) {
            if (i == 0) {
                return;
            }
            --i;
            if (cur[i] < bound[i]) {
                ++cur[i];
                flat += strides[i];
                break;
            }
            flat -= cur[i] * strides[i];
            cur[i] = 0;
        }
    }
}

template <typename T>
bool is_zero(const T &v) {
    return v == T(0);
}

template <typename T>
T from_int(long v) {
    return T(v);
}

}  // namespace

template <typename T>
TruncatedSeries<T>::TruncatedSeries(MultiIndex caps) : caps_(std::move(caps)) {
    const std::size_t n = caps_.size();
    strides_.assign(n, 1);
    std::size_t total = 1;
    for (std::size_t i = n; i-- > 0;) {
        strides_[i] = total;
        total *= caps_[i] + 1;
        if (total > 50'000'000) {
            throw Error(ErrorCode::TooLarge, "series caps describe more than 5e7 coefficients");
        }
    }
    coeffs_.assign(total, T(0));
}

template <typename T>
TruncatedSeries<T> TruncatedSeries<T>::constant(const MultiIndex &caps, const T &value) {
    TruncatedSeries s(caps);
    s.coeffs_[0] = value;
    return s;
}

template <typename T>
TruncatedSeries<T> TruncatedSeries<T>::variable(const MultiIndex &caps, std::size_t i) {
    if (i >= caps.size()) {
        throw Error(ErrorCode::InvalidArgument, "variable index out of range");
    }
    TruncatedSeries s(caps);
    if (caps[i] >= 1) {
        s.coeffs_[s.strides_[i]] = T(1);
    }
    return s;
}

template <typename T>
TruncatedSeries<T> TruncatedSeries<T>::monomial(const MultiIndex &caps, const MultiIndex &e, const T &c) {
    TruncatedSeries s(caps);
    if (s.within_cap(e)) {
        s.coeffs_[s.index_of(e)] = c;
    }
    return s;
}

template <typename T>
bool TruncatedSeries<T>::within_cap(const MultiIndex &p) const {
    if (p.size() != caps_.size()) {
        throw Error(ErrorCode::DimensionMismatch, "exponent length differs from number of variables");
    }
    return p.dominated_by(caps_);
}

template <typename T>
std::size_t TruncatedSeries<T>::index_of(const MultiIndex &p) const {
    if (!within_cap(p)) {
        throw Error(ErrorCode::ExceedsCap, "exponent " + p.to_string() + " exceeds cap " + caps_.to_string());
    }
    std::size_t flat = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        flat += p[i] * strides_[i];
    }
    return flat;
}

template <typename T>
MultiIndex TruncatedSeries<T>::exponent_of(std::size_t flat) const {
    std::vector<unsigned> e(caps_.size());
    for (std::size_t i = 0; i < caps_.size(); ++i) {
        e[i] = static_cast<unsigned>(flat / strides_[i]);
        flat %= strides_[i];
    }
    return MultiIndex(std::move(e));
}

template <typename T>
unsigned TruncatedSeries<T>::total_degree(std::size_t flat) const {
    unsigned d = 0;
    for (std::size_t i = 0; i < caps_.size(); ++i) {
        d += static_cast<unsigned>(flat / strides_[i]);
        flat %= strides_[i];
    }
    return d;
}

template <typename T>
const T &TruncatedSeries<T>::coefficient(const MultiIndex &p) const {
    return coeffs_[index_of(p)];
}

template <typename T>
void TruncatedSeries<T>::set_coefficient(const MultiIndex &p, const T &value) {
    coeffs_[index_of(p)] = value;
}

template <typename T>
void TruncatedSeries<T>::check_compatible(const TruncatedSeries &other) const {
    if (caps_ != other.caps_) {
        throw Error(ErrorCode::CapMismatch, "series caps differ: " + caps_.to_string() + " vs " + other.caps_.to_string());
    }
}

template <typename T>
template <typename F>
void TruncatedSeries<T>::for_each_below(std::size_t flat, F &&f) const {
    for_each_in_box(exponent_of(flat).parts(), strides_, std::forward<F>(f));
}

template <typename T>
TruncatedSeries<T> &TruncatedSeries<T>::operator+=(const TruncatedSeries &other) {
    check_compatible(other);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        coeffs_[k] += other.coeffs_[k];
    }
    return *this;
}

template <typename T>
TruncatedSeries<T> &TruncatedSeries<T>::operator-=(const TruncatedSeries &other) {
    check_compatible(other);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        coeffs_[k] -= other.coeffs_[k];
    }
    return *this;
}

template <typename T>
TruncatedSeries<T> &TruncatedSeries<T>::operator*=(const T &s) {
    for (auto &c : coeffs_) {
        c *= s;
    }
    return *this;
}

template <typename T>
TruncatedSeries<T> TruncatedSeries<T>::mul(const TruncatedSeries &other) const {
    check_compatible(other);
    TruncatedSeries out(caps_);
    std::vector<unsigned> room(caps_.size());
    for (std::size_t i1 = 0; i1 < coeffs_.size(); ++i1) {
        if (is_zero(coeffs_[i1])) {
            continue;
        }
        const MultiIndex e1 = exponent_of(i1);
        for (std::size_t k = 0; k < room.size(); ++k) {
            room[k] = caps_[k] - e1[k];
        }
        const T &c1 = coeffs_[i1];
        for_each_in_box(room, strides_, [&](std::size_t i2) {
            if (!is_zero(other.coeffs_[i2])) {
                out.coeffs_[i1 + i2] += c1 * other.coeffs_[i2];
            }
        });
    }
    return out;
}

template <typename T>
TruncatedSeries<T> TruncatedSeries<T>::inverse() const {
    const T &s0 = coeffs_[0];
    if (is_zero(s0)) {
        throw Error(ErrorCode::NonInvertibleConstantTerm, "constant term is zero");
    }
    TruncatedSeries t(caps_);
    const T inv0 = T(1) / s0;
    t.coeffs_[0] = inv0;
    for (std::size_t e = 1; e < coeffs_.size(); ++e) {
        T acc(0);
        for_each_below(e, [&](std::size_t ep) {
            if (ep != 0 && !is_zero(coeffs_[ep])) {
                acc += coeffs_[ep] * t.coeffs_[e - ep];
            }
        });
        t.coeffs_[e] = -acc * inv0;
    }
    return t;
}

template <typename T>
TruncatedSeries<T> TruncatedSeries<T>::sqrt() const {
    if (coeffs_[0] != T(1)) {
        throw Error(ErrorCode::ConstantTermNotOne, "square root needs constant term 1");
    }
    TruncatedSeries u(caps_);
    u.coeffs_[0] = T(1);
    const T half = T(1) / from_int<T>(2);
    for (std::size_t e = 1; e < coeffs_.size(); ++e) {
        T acc = coeffs_[e];
        for_each_below(e, [&](std::size_t ep) {
            if (ep != 0 && ep != e) {
                acc -= u.coeffs_[ep] * u.coeffs_[e - ep];
            }
        });
        u.coeffs_[e] = acc * half;
    }
    return u;
}

template <typename T>
TruncatedSeries<T> TruncatedSeries<T>::sqrt_inverse() const {
    return sqrt().inverse();
}

template <typename T>
TruncatedSeries<T> TruncatedSeries<T>::exp() const {
    if (!is_zero(coeffs_[0])) {
        throw Error(ErrorCode::BadConstantTerm, "exp needs constant term 0");
    }
    TruncatedSeries f(caps_);
    f.coeffs_[0] = T(1);
    for (std::size_t e = 1; e < coeffs_.size(); ++e) {
        T acc(0);
        for_each_below(e, [&](std::size_t ep) {
            if (ep != 0 && !is_zero(coeffs_[ep])) {
                acc += from_int<T>(total_degree(ep)) * coeffs_[ep] * f.coeffs_[e - ep];
            }
        });
        f.coeffs_[e] = acc / from_int<T>(total_degree(e));
    }
    return f;
}

template <typename T>
TruncatedSeries<T> TruncatedSeries<T>::log() const {
    if (coeffs_[0] != T(1)) {
        throw Error(ErrorCode::BadConstantTerm, "log needs constant term 1");
    }
    TruncatedSeries l(caps_);
    for (std::size_t e = 1; e < coeffs_.size(); ++e) {
        T acc(0);
        for_each_below(e, [&](std::size_t ep) {
            if (ep != 0 && ep != e && !is_zero(coeffs_[ep])) {
                acc += from_int<T>(total_degree(e - ep)) * l.coeffs_[e - ep] * coeffs_[ep];
            }
        });
        l.coeffs_[e] = coeffs_[e] - acc / from_int<T>(total_degree(e));
    }
    return l;
}

template <typename T>
TruncatedSeries<T> TruncatedSeries<T>::pow(unsigned k) const {
    TruncatedSeries result = constant(caps_, T(1));
    TruncatedSeries base = *this;
    while (k > 0) {
        if (k & 1U) {
            result = result.mul(base);
        }
        k >>= 1U;
        if (k > 0) {
            base = base.mul(base);
        }
    }
    return result;
}

template <typename T>
TruncatedSeries<T> TruncatedSeries<T>::rescale(const std::vector<T> &w) const {
    if (w.size() != caps_.size()) {
        throw Error(ErrorCode::DimensionMismatch, "one scale factor per variable expected");
    }
    TruncatedSeries out = *this;
    for (std::size_t flat = 0; flat < coeffs_.size(); ++flat) {
        const MultiIndex e = exponent_of(flat);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] > 0) {
                out.coeffs_[flat] *= int_pow(w[i], e[i]);
            }
        }
    }
    return out;
}

template <typename T>
TruncatedSeries<T> compose(const std::vector<T> &f, const TruncatedSeries<T> &w) {
    if (!is_zero(w.constant_term())) {
        throw Error(ErrorCode::BadConstantTerm, "composition needs an inner series with constant term 0");
    }
    const MultiIndex &caps = w.caps();
    if (f.empty()) {
        return TruncatedSeries<T>(caps);
    }
    // w^k vanishes once k exceeds the total cap.
    const std::size_t top = std::min<std::size_t>(f.size() - 1, caps.weight());
    TruncatedSeries<T> result = TruncatedSeries<T>::constant(caps, f[top]);
    for (std::size_t k = top; k-- > 0;) {
        result = result.mul(w);
        result[0] += f[k];
    }
    return result;
}

template <typename T>
TruncatedSeries<T> det_series(const SeriesMatrix<T> &m) {
    const std::size_t n = m.size();
    if (n == 0) {
        throw Error(ErrorCode::InvalidArgument, "empty series matrix");
    }
    for (const auto &row : m) {
        if (row.size() != n) {
            throw Error(ErrorCode::NotSquare, "series matrix is not square");
        }
    }
    if (n > 8) {
        throw Error(ErrorCode::TooLarge, "series determinant limited to dim <= 8");
    }
    const MultiIndex &caps = m[0][0].caps();
    std::vector<bool> zero_entry(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto &c = m[i][j].coefficients();
            zero_entry[i * n + j] = std::all_of(c.begin(), c.end(), [](const T &v) { return is_zero(v); });
        }
    }
    // partial[mask]: signed sum over injections of rows 0..|mask|-1 onto the columns in mask.
    const std::size_t full = std::size_t{1} << n;
    std::vector<std::optional<TruncatedSeries<T>>> partial(full);
    partial[0] = TruncatedSeries<T>::constant(caps, T(1));
    for (std::size_t mask = 0; mask + 1 < full; ++mask) {
        if (!partial[mask]) {
            continue;
        }
        const std::size_t r = static_cast<std::size_t>(std::popcount(mask));
        for (std::size_t j = 0; j < n; ++j) {
            if ((mask >> j) & 1U || zero_entry[r * n + j]) {
                continue;
            }
            const int inversions = std::popcount(mask >> (j + 1));
            TruncatedSeries<T> term = partial[mask]->mul(m[r][j]);
            if (inversions % 2 == 1) {
                term *= T(-1);
            }
            auto &slot = partial[mask | (std::size_t{1} << j)];
            if (slot) {
                *slot += term;
            } else {
                slot = std::move(term);
            }
        }
    }
    return partial[full - 1] ? *partial[full - 1] : TruncatedSeries<T>(caps);
}

template <typename T>
SeriesMatrix<T> constant_series_matrix(const Matrix<T> &a, const MultiIndex &caps) {
    SeriesMatrix<T> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out[i].push_back(TruncatedSeries<T>::constant(caps, a(i, j)));
        }
    }
    return out;
}

template <typename T>
SeriesMatrix<T> series_matrix_product(const SeriesMatrix<T> &a, const SeriesMatrix<T> &b) {
    if (a.empty() || b.empty() || a[0].size() != b.size()) {
        throw Error(ErrorCode::DimensionMismatch, "inner dimensions differ in series matrix product");
    }
    const MultiIndex &caps = a[0][0].caps();
    SeriesMatrix<T> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b[0].size(); ++j) {
            TruncatedSeries<T> acc(caps);
            for (std::size_t k = 0; k < b.size(); ++k) {
                acc += a[i][k].mul(b[k][j]);
            }
            out[i].push_back(std::move(acc));
        }
    }
    return out;
}

template <typename T>
SeriesMatrix<T> diagonal_variables(const MultiIndex &caps, std::size_t offset, std::size_t m) {
    SeriesMatrix<T> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            out[i].push_back(i == j ? TruncatedSeries<T>::variable(caps, offset + i) : TruncatedSeries<T>(caps));
        }
    }
    return out;
}

template <typename T>
SeriesMatrix<T> identity_minus(const SeriesMatrix<T> &m) {
    SeriesMatrix<T> out = m;
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = 0; j < out[i].size(); ++j) {
            out[i][j] *= T(-1);
            if (i == j) {
                out[i][j][0] += T(1);
            }
        }
    }
    return out;
}

double max_coefficient_error(const TruncatedSeries<Complex> &a, const TruncatedSeries<Complex> &b) {
    if (a.caps() != b.caps()) {
        throw Error(ErrorCode::CapMismatch, "series caps differ");
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    return worst;
}

#define PERMKIT_INSTANTIATE(T)                                                                      \
    template class TruncatedSeries<T>;                                                              \
    template TruncatedSeries<T> compose<T>(const std::vector<T> &, const TruncatedSeries<T> &);     \
    template TruncatedSeries<T> det_series<T>(const SeriesMatrix<T> &);                             \
    template SeriesMatrix<T> constant_series_matrix<T>(const Matrix<T> &, const MultiIndex &);     \
    template SeriesMatrix<T> series_matrix_product<T>(const SeriesMatrix<T> &, const SeriesMatrix<T> &); \
    template SeriesMatrix<T> diagonal_variables<T>(const MultiIndex &, std::size_t, std::size_t);  \
    template SeriesMatrix<T> identity_minus<T>(const SeriesMatrix<T> &);

PERMKIT_INSTANTIATE(mpq_class)
PERMKIT_INSTANTIATE(Complex)

#undef PERMKIT_INSTANTIATE

}  // namespace permkit
