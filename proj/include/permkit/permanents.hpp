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

#ifndef PERMKIT_PERMANENTS_HPP
#define PERMKIT_PERMANENTS_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "permkit/combinatorics.hpp"
#include "permkit/numerics.hpp"

namespace permkit {

enum class Algorithm {
    Naive,
    Ryser,
    Glynn,
    GlynnRepeatedRows,
    GlynnRootsOfUnity,
    GlynnKan,
    GlynnKanRepeated,
    CauchyBinet,
    RyserRepeated,
};

std::string_view algorithm_name(Algorithm algo);
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct PermanentResult {
    Complex value;
    Algorithm algorithm;
    std::uint64_t term_count = 0;
    // Set when the repetition weights differ; the value is then 0 by convention.
    bool weight_mismatch = false;
};

/// Upper bound on the number of summands any single evaluation may take.
inline constexpr std::uint64_t kTermBudget = 10'000'000;

inline constexpr std::size_t kNaiveMaxDim = 10;
inline constexpr std::size_t kGrayMaxDim = 30;
inline constexpr std::size_t kGlynnKanMaxDim = 14;

/// How the roots-of-unity formulas pick their grids.
///  Uniform: order n on every coordinate (n + 1 when a pattern is concentrated
///           on one coordinate, where order n would alias).
///  Minimal: order r_j + 1 on coordinate j, the smallest grid that isolates the
///           target exponent r_j.
///  Auto:    whichever has fewer points (Uniform on ties).
enum class RootGrid { Uniform, Minimal, Auto };

/// Sum over permutations (Heap's algorithm). Non-square input gives 0 and the
/// empty matrix gives 1. Works for any field-like T.
template <typename T>
T naive_permanent_value(const Matrix<T> &a) {
    if (!a.is_square()) {
        return T(0);
    }
    const std::size_t n = a.rows();
    if (n == 0) {
        return T(1);
    }
    if (n > kNaiveMaxDim) {
        throw Error(ErrorCode::TooLarge, "naive permanent limited to dim <= 10");
    }
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) {
        perm[i] = i;
    }
    auto term = [&] {
        T prod = a(0, perm[0]);
        for (std::size_t i = 1; i < n; ++i) {
            prod *= a(i, perm[i]);
        }
        return prod;
    };
    T total = term();
    std::vector<std::size_t> c(n, 0);
    std::size_t i = 1;
    while (i < n) {
        if (c[i] < i) {
            if (i % 2 == 0) {
                std::swap(perm[0], perm[i]);
            } else {
                std::swap(perm[c[i]], perm[i]);
            }
            total += term();
            ++c[i];
            i = 1;
        } else {
            c[i] = 0;
            ++i;
        }
    }
    return total;
}

/// Ryser's formula with the column subsets grouped by multiplicity:
///   Per(A_{p,q}) = sum_{0<=k<=q} (-1)^{n-|k|} prod_j C(q_j,k_j) prod_i (sum_j k_j a_ij)^{p_i}.
/// Cost prod_j (q_j + 1) terms, so large repeated matrices stay cheap.
template <typename T>
T repeated_permanent_value(const Matrix<T> &a, const RepetitionPattern &pat) {
    if (pat.rows.size() != a.rows() || pat.cols.size() != a.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "repetition pattern length does not match matrix");
    }
    const unsigned n = pat.rows.weight();
    if (n != pat.cols.weight()) {
        return T(0);
    }
    if (n == 0) {
        return T(1);
    }
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::uint64_t terms = 1;
    for (unsigned qj : pat.cols) {
        terms *= qj + 1;
        if (terms > kTermBudget) {
            throw Error(ErrorCode::TooLarge, "multiplicity Ryser exceeds the term budget");
        }
    }
    std::vector<std::vector<T>> binom(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        for (unsigned k = 0; k <= pat.cols[j]; ++k) {
            binom[j].push_back(T(binomial(pat.cols[j], k).get_si()));
        }
    }
    std::vector<unsigned> k(cols, 0);
    std::vector<T> row_sum(rows, T(0));
    T total(0);
    while (true) {
        T term(1);
        unsigned size = 0;
        for (std::size_t j = 0; j < cols; ++j) {
            term *= binom[j][k[j]];
            size += k[j];
        }
        for (std::size_t i = 0; i < rows && term != T(0); ++i) {
            if (pat.rows[i] > 0) {
                term *= int_pow(row_sum[i], pat.rows[i]);
            }
        }
        if ((n - size) % 2 == 1) {
            total -= term;
        } else {
            total += term;
        }
        // Advance the mixed-radix counter, updating row sums incrementally.
        std::size_t j = 0;
        for (; j < cols; ++j) {
            if (k[j] < pat.cols[j]) {
                ++k[j];
                for (std::size_t i = 0; i < rows; ++i) {
                    row_sum[i] += a(i, j);
                }
                break;
            }
            for (std::size_t i = 0; i < rows; ++i) {
                row_sum[i] -= T(static_cast<long>(k[j])) * a(i, j);
            }
            k[j] = 0;
        }
        if (j == cols) {
            break;
        }
    }
    return total;
}

PermanentResult permanent_naive(const ComplexMatrix &a);
PermanentResult permanent_ryser(const ComplexMatrix &a);
PermanentResult permanent_glynn(const ComplexMatrix &a);

/// Per(A_{q,1}) for an n x n matrix A and |q| = n.
PermanentResult permanent_glynn_repeated_rows(const ComplexMatrix &a, const MultiIndex &q);

/// Per(A_{p,q}) = (q!/|grid|) sum_{x in grid} x^{-q} (Ax)^p.
PermanentResult permanent_roots_of_unity(const ComplexMatrix &a, const RepetitionPattern &pat,
                                         RootGrid grid = RootGrid::Auto);

PermanentResult permanent_glynn_kan(const ComplexMatrix &a);

/// Per(A_{p,q}) = p!q!/(|grid_x||grid_y| n!) sum x^{-p} y^{-q} (x^T A y)^n.
PermanentResult permanent_glynn_kan_repeated(const ComplexMatrix &a, const RepetitionPattern &pat,
                                             RootGrid grid = RootGrid::Auto);

/// Per((AB)_{p,q}) = sum_{|k|=n} Per(A_{p,k}) Per(B_{k,q}) / k!.
PermanentResult permanent_cauchy_binet(const ComplexMatrix &a, const ComplexMatrix &b, const RepetitionPattern &pat);

PermanentResult permanent_ryser_repeated(const ComplexMatrix &a, const RepetitionPattern &pat);

/// Dispatch by algorithm. `pat` defaults to all ones; `b` is used only by CauchyBinet
/// (defaults to the identity).
PermanentResult permanent(Algorithm algo, const ComplexMatrix &a, const std::optional<RepetitionPattern> &pat = {},
                          const std::optional<ComplexMatrix> &b = {});

/// Independent oracle for Per(A_{p,q}): naive enumeration on the repeated matrix
/// when it has at most 8 rows, multiplicity Ryser otherwise.
Complex oracle_permanent(const ComplexMatrix &a, const RepetitionPattern &pat);

/// Exact counterpart of oracle_permanent over the rationals.
mpq_class oracle_permanent_exact(const Matrix<mpq_class> &a, const RepetitionPattern &pat);

}  // namespace permkit

#endif
