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

#ifndef PERMKIT_COMBINATORICS_HPP
#define PERMKIT_COMBINATORICS_HPP

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "permkit/numerics.hpp"

namespace permkit {

/// Tuple of non-negative integers: repetition counts, photon numbers, or
/// monomial exponents depending on context.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<unsigned> parts) : parts_(std::move(parts)) {}
    MultiIndex(std::initializer_list<unsigned> parts) : parts_(parts) {}

    static MultiIndex zeros(std::size_t m) { return MultiIndex(std::vector<unsigned>(m, 0)); }
    static MultiIndex ones(std::size_t m) { return MultiIndex(std::vector<unsigned>(m, 1)); }
    static MultiIndex filled(std::size_t m, unsigned value) { return MultiIndex(std::vector<unsigned>(m, value)); }
    static MultiIndex unit(std::size_t m, std::size_t i, unsigned value = 1) {
        MultiIndex e = zeros(m);
        e.parts_[i] = value;
        return e;
    }

    std::size_t size() const noexcept { return parts_.size(); }
    unsigned operator[](std::size_t i) const { return parts_[i]; }
    unsigned &operator[](std::size_t i) { return parts_[i]; }
    const std::vector<unsigned> &parts() const noexcept { return parts_; }
    auto begin() const noexcept { return parts_.begin(); }
    auto end() const noexcept { return parts_.end(); }

    unsigned weight() const noexcept {
        unsigned w = 0;
        for (unsigned v : parts_) {
            w += v;
        }
        return w;
    }

    /// Componentwise p <= q.
    bool dominated_by(const MultiIndex &other) const;

    /// True when all weight sits on one coordinate.
    bool is_concentrated() const noexcept;

    MultiIndex concat(const MultiIndex &other) const;

    std::string to_string() const;

    auto operator<=>(const MultiIndex &) const = default;
    bool operator==(const MultiIndex &) const = default;

private:
    std::vector<unsigned> parts_;
};

MultiIndex operator+(const MultiIndex &a, const MultiIndex &b);
/// Componentwise difference; throws InvalidArgument if any component would go negative.
MultiIndex operator-(const MultiIndex &a, const MultiIndex &b);

mpz_class factorial(unsigned n);
/// p! = p_1! ... p_m!
mpz_class factorial_product(const MultiIndex &p);
mpz_class binomial(unsigned n, unsigned k);
/// Multinomial |p|! / p!.
mpz_class multinomial(const MultiIndex &p);

/// Row repetitions p and column repetitions q of a matrix.
struct RepetitionPattern {
    MultiIndex rows;
    MultiIndex cols;

    static RepetitionPattern identity(std::size_t m) { return {MultiIndex::ones(m), MultiIndex::ones(m)}; }
    bool square_compatible() const noexcept { return rows.weight() == cols.weight(); }
    bool operator==(const RepetitionPattern &) const = default;
};

/// A_{p,q}: row i repeated p_i times, then column j repeated q_j times.
/// Zero repetitions delete the row or column; the result may be rectangular.
template <typename T>
Matrix<T> repeat_matrix(const Matrix<T> &a, const RepetitionPattern &pat) {
    if (pat.rows.size() != a.rows() || pat.cols.size() != a.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "repetition pattern length does not match matrix");
    }
    std::vector<std::size_t> row_map;
    std::vector<std::size_t> col_map;
    for (std::size_t i = 0; i < pat.rows.size(); ++i) {
        row_map.insert(row_map.end(), pat.rows[i], i);
    }
    for (std::size_t j = 0; j < pat.cols.size(); ++j) {
        col_map.insert(col_map.end(), pat.cols[j], j);
    }
    Matrix<T> out(row_map.size(), col_map.size());
    for (std::size_t r = 0; r < row_map.size(); ++r) {
        for (std::size_t c = 0; c < col_map.size(); ++c) {
            out(r, c) = a(row_map[r], col_map[c]);
        }
    }
    return out;
}

/// All p in N^m with |p| = n, in lexicographic order.
std::vector<MultiIndex> enumerate_weight(std::size_t m, unsigned n);

/// All p with p <= caps componentwise, in lexicographic order.
std::vector<MultiIndex> enumerate_box(const MultiIndex &caps);

/// Ordered tuples (of 2 or 3 parts) summing componentwise to p. A set entry in
/// `weights` restricts the weight of the corresponding part.
std::vector<std::vector<MultiIndex>> enumerate_splits(
    const MultiIndex &p, std::size_t parts, const std::vector<std::optional<unsigned>> &weights = {});

/// Number of multi-indices of length m and weight n: C(n + m - 1, m - 1).
std::uint64_t count_weight(std::size_t m, unsigned n);

/// Visits the reflected binary Gray code on `bits` bits. The callback receives
/// the step number (starting at 1) and the bit flipped at that step.
inline void for_each_gray_flip(unsigned bits, const std::function<void(std::uint64_t, unsigned)> &visit) {
    const std::uint64_t total = std::uint64_t{1} << bits;
    for (std::uint64_t step = 1; step < total; ++step) {
        visit(step, static_cast<unsigned>(__builtin_ctzll(step)));
    }
}

}  // namespace permkit

#endif
