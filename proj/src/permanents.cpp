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

#include "permkit/permanents.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace permkit {

namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 9> kAlgorithmNames{{
    {Algorithm::Naive, "naive"},
    {Algorithm::Ryser, "ryser"},
    {Algorithm::Glynn, "glynn"},
    {Algorithm::GlynnRepeatedRows, "glynn_repeated_rows"},
    {Algorithm::GlynnRootsOfUnity, "roots_of_unity"},
    {Algorithm::GlynnKan, "glynn_kan"},
    {Algorithm::GlynnKanRepeated, "glynn_kan_repeated"},
    {Algorithm::CauchyBinet, "cauchy_binet"},
    {Algorithm::RyserRepeated, "ryser_repeated"},
}};

PermanentResult mismatch(Algorithm algo) { return {Complex(0.0), algo, 0, true}; }

void require_square(const ComplexMatrix &a) {
    if (!a.is_square()) {
        throw Error(ErrorCode::NotSquare, "permanent requires a square matrix");
    }
}

void require_pattern(const ComplexMatrix &a, const RepetitionPattern &pat) {
    require_square(a);
    if (pat.rows.size() != a.rows() || pat.cols.size() != a.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "repetition pattern length does not match matrix");
    }
}

double to_double(const mpz_class &z) { return z.get_d(); }

Complex root_of_unity(unsigned order, unsigned k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(order);
    return {std::cos(angle), std::sin(angle)};
}

/// Per-coordinate grid orders for extracting the coefficient of x^r from a
/// homogeneous polynomial of degree |r|.
std::vector<unsigned> uniform_orders(const MultiIndex &r) {
    const unsigned n = r.weight();
    // With all weight on one coordinate, x^{n e_a} and x^{n e_b} coincide on
    // the order-n grid, so one extra root is needed.
    const bool bump = r.size() >= 2 && r.is_concentrated();
    return std::vector<unsigned>(r.size(), bump ? n + 1 : n);
}

std::vector<unsigned> minimal_orders(const MultiIndex &r) {
    std::vector<unsigned> out(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) {
        out[j] = r[j] + 1;
    }
    return out;
}

std::uint64_t grid_size(const std::vector<unsigned> &orders) {
    std::uint64_t total = 1;
    for (unsigned o : orders) {
        total *= o;
        if (total > kTermBudget * 16) {
            return total;
        }
    }
    return total;
}

/// Picks the grids for one or two index sets according to `mode`.
std::vector<std::vector<unsigned>> choose_grids(const std::vector<const MultiIndex *> &targets, RootGrid mode) {
    auto build = [&](bool minimal) {
        std::vector<std::vector<unsigned>> grids;
        for (const MultiIndex *t : targets) {
            grids.push_back(minimal ? minimal_orders(*t) : uniform_orders(*t));
        }
        return grids;
    };
    auto total = [](const std::vector<std::vector<unsigned>> &grids) {
        std::uint64_t t = 1;
        for (const auto &g : grids) {
            t *= grid_size(g);
            if (t > kTermBudget) {
                return t;
            }
        }
        return t;
    };
    std::vector<std::vector<unsigned>> grids = build(mode == RootGrid::Minimal);
    if (mode == RootGrid::Auto) {
        // Both grids are exact; take the smaller, preferring the uniform one on ties.
        auto minimal = build(true);
        if (total(minimal) < total(grids)) {
            grids = std::move(minimal);
        }
    }
    if (total(grids) > kTermBudget) {
        throw Error(ErrorCode::TooLarge, "roots-of-unity grid exceeds the 10^7 term budget");
    }
    return grids;
}

/// Table of powers: roots[j][k] = exp(2 pi i k / orders[j]).
std::vector<std::vector<Complex>> root_tables(const std::vector<unsigned> &orders) {
    std::vector<std::vector<Complex>> t(orders.size());
    for (std::size_t j = 0; j < orders.size(); ++j) {
        for (unsigned k = 0; k < orders[j]; ++k) {
            t[j].push_back(root_of_unity(orders[j], k));
        }
    }
    return t;
}

/// Mixed-radix increment; returns false after the last tuple.
bool advance(std::vector<unsigned> &k, const std::vector<unsigned> &orders) {
    for (std::size_t j = 0; j < k.size(); ++j) {
        if (++k[j] < orders[j]) {
            return true;
        }
        k[j] = 0;
    }
    return false;
}

/// x^{-r} on the grid point k: product of exp(-2 pi i k_j r_j / order_j).
Complex inverse_monomial(const std::vector<unsigned> &k, const std::vector<unsigned> &orders, const MultiIndex &r) {
    Complex out = 1.0;
    for (std::size_t j = 0; j < k.size(); ++j) {
        if (r[j] == 0) {
            continue;
        }
        const unsigned e = static_cast<unsigned>((static_cast<std::uint64_t>(k[j]) * r[j]) % orders[j]);
        out *= root_of_unity(orders[j], (orders[j] - e) % orders[j]);
    }
    return out;
}

}  // namespace

std::string_view algorithm_name(Algorithm algo) {
    for (const auto &[a, name] : kAlgorithmNames) {
        if (a == algo) {
            return name;
        }
    }
    return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
    for (const auto &[a, n] : kAlgorithmNames) {
        if (n == name) {
            return a;
        }
    }
    return std::nullopt;
}

PermanentResult permanent_naive(const ComplexMatrix &a) {
    if (!a.is_square()) {
        return {Complex(0.0), Algorithm::Naive, 0, false};
    }
    const Complex value = naive_permanent_value(a);
    std::uint64_t terms = 1;
    for (std::size_t k = 2; k <= a.rows(); ++k) {
        terms *= k;
    }
    return {value, Algorithm::Naive, terms, false};
}

PermanentResult permanent_ryser(const ComplexMatrix &a) {
    if (!a.is_square()) {
        return {Complex(0.0), Algorithm::Ryser, 0, false};
    }
    const std::size_t n = a.rows();
    if (n == 0) {
        return {Complex(1.0), Algorithm::Ryser, 1, false};
    }
    if (n > kGrayMaxDim) {
        throw Error(ErrorCode::TooLarge, "Ryser limited to dim <= 30");
    }
    std::vector<Complex> row_sum(n, 0.0);
    std::vector<bool> in_subset(n, false);
    Complex total = 0.0;
    std::size_t subset_size = 0;
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t step = 1; step < count; ++step) {
        const auto j = static_cast<std::size_t>(__builtin_ctzll(step));
        const double dir = in_subset[j] ? -1.0 : 1.0;
        in_subset[j] = !in_subset[j];
        subset_size = in_subset[j] ? subset_size + 1 : subset_size - 1;
        for (std::size_t i = 0; i < n; ++i) {
            row_sum[i] += dir * a(i, j);
        }
        Complex prod = row_sum[0];
        for (std::size_t i = 1; i < n; ++i) {
            prod *= row_sum[i];
        }
        if ((n - subset_size) % 2 == 1) {
            total -= prod;
        } else {
            total += prod;
        }
    }
    return {total, Algorithm::Ryser, count, false};
}

PermanentResult permanent_glynn(const ComplexMatrix &a) {
    if (!a.is_square()) {
        return {Complex(0.0), Algorithm::Glynn, 0, false};
    }
    const std::size_t n = a.rows();
    if (n == 0) {
        return {Complex(1.0), Algorithm::Glynn, 1, false};
    }
    if (n > kGrayMaxDim) {
        throw Error(ErrorCode::TooLarge, "Glynn limited to dim <= 30");
    }
    // Only half of {-1,1}^n is visited: x_1 = 1 fixed, the other half mirrors it.
    std::vector<Complex> row_sum(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            row_sum[i] += a(i, j);
        }
    }
    std::vector<int> x(n, 1);
    int sign = 1;
    auto product = [&] {
        Complex prod = row_sum[0];
        for (std::size_t i = 1; i < n; ++i) {
            prod *= row_sum[i];
        }
        return prod;
    };
    Complex total = product();
    const std::uint64_t count = std::uint64_t{1} << (n - 1);
    for (std::uint64_t step = 1; step < count; ++step) {
        const std::size_t j = 1 + static_cast<std::size_t>(__builtin_ctzll(step));
        x[j] = -x[j];
        sign = -sign;
        const double delta = 2.0 * x[j];
        for (std::size_t i = 0; i < n; ++i) {
            row_sum[i] += delta * a(i, j);
        }
        total += static_cast<double>(sign) * product();
    }
    return {total / static_cast<double>(count), Algorithm::Glynn, count, false};
}

PermanentResult permanent_glynn_repeated_rows(const ComplexMatrix &a, const MultiIndex &q) {
    require_square(a);
    const std::size_t n = a.rows();
    if (q.size() != n) {
        throw Error(ErrorCode::DimensionMismatch, "row repetition length must equal dim");
    }
    if (q.weight() != n) {
        return mismatch(Algorithm::GlynnRepeatedRows);
    }
    if (n == 0) {
        return {Complex(1.0), Algorithm::GlynnRepeatedRows, 1, false};
    }
    if (n > kGrayMaxDim) {
        throw Error(ErrorCode::TooLarge, "Glynn limited to dim <= 30");
    }
    std::vector<Complex> row_sum(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            row_sum[i] += a(i, j);
        }
    }
    std::vector<int> x(n, 1);
    int sign = 1;
    auto product = [&] {
        Complex prod = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (q[i] > 0) {
                prod *= int_pow(row_sum[i], q[i]);
            }
        }
        return prod;
    };
    // Flipping every x_j multiplies the summand by (-1)^n (-1)^|q| = 1, so
    // fixing x_1 = 1 halves the work.
    Complex total = product();
    const std::uint64_t count = std::uint64_t{1} << (n - 1);
    for (std::uint64_t step = 1; step < count; ++step) {
        const std::size_t j = 1 + static_cast<std::size_t>(__builtin_ctzll(step));
        x[j] = -x[j];
        sign = -sign;
        const double delta = 2.0 * x[j];
        for (std::size_t i = 0; i < n; ++i) {
            row_sum[i] += delta * a(i, j);
        }
        total += static_cast<double>(sign) * product();
    }
    return {total / static_cast<double>(count), Algorithm::GlynnRepeatedRows, count, false};
}

PermanentResult permanent_roots_of_unity(const ComplexMatrix &a, const RepetitionPattern &pat, RootGrid mode) {
    require_pattern(a, pat);
    const unsigned n = pat.rows.weight();
    if (n != pat.cols.weight()) {
        return mismatch(Algorithm::GlynnRootsOfUnity);
    }
    if (n == 0) {
        return {Complex(1.0), Algorithm::GlynnRootsOfUnity, 1, false};
    }
    const std::size_t m = a.rows();
    const std::vector<unsigned> orders = choose_grids({&pat.cols}, mode)[0];
    const auto roots = root_tables(orders);
    std::vector<unsigned> k(m, 0);
    std::vector<Complex> x(m);
    Complex total = 0.0;
    std::uint64_t terms = 0;
    do {
        for (std::size_t j = 0; j < m; ++j) {
            x[j] = roots[j][k[j]];
        }
        Complex term = inverse_monomial(k, orders, pat.cols);
        for (std::size_t i = 0; i < m && term != 0.0; ++i) {
            if (pat.rows[i] == 0) {
                continue;
            }
            Complex s = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                s += a(i, j) * x[j];
            }
            term *= int_pow(s, pat.rows[i]);
        }
        total += term;
        ++terms;
    } while (advance(k, orders));
    const double prefactor = to_double(factorial_product(pat.cols)) / static_cast<double>(terms);
    return {total * prefactor, Algorithm::GlynnRootsOfUnity, terms, false};
}

PermanentResult permanent_glynn_kan(const ComplexMatrix &a) {
    if (!a.is_square()) {
        return {Complex(0.0), Algorithm::GlynnKan, 0, false};
    }
    const std::size_t m = a.rows();
    if (m == 0) {
        return {Complex(1.0), Algorithm::GlynnKan, 1, false};
    }
    if (m > kGlynnKanMaxDim) {
        throw Error(ErrorCode::TooLarge, "Glynn-Kan limited to dim <= 14");
    }
    // (x, y) -> (-x, y) and (x, -y) leave the summand unchanged, so x_1 = y_1 = 1.
    const std::uint64_t half = std::uint64_t{1} << (m - 1);
    std::vector<Complex> v(m, 0.0);  // v_j = sum_i x_i a_ij
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            v[j] += a(i, j);
        }
    }
    std::vector<int> x(m, 1);
    int sign_x = 1;
    Complex total = 0.0;
    for (std::uint64_t xs = 0; xs < half; ++xs) {
        if (xs > 0) {
            const std::size_t i = 1 + static_cast<std::size_t>(__builtin_ctzll(xs));
            x[i] = -x[i];
            sign_x = -sign_x;
            const double delta = 2.0 * x[i];
            for (std::size_t j = 0; j < m; ++j) {
                v[j] += delta * a(i, j);
            }
        }
        Complex s = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            s += v[j];
        }
        std::vector<int> y(m, 1);
        int sign_y = 1;
        Complex inner = int_pow(s, static_cast<unsigned>(m));
        for (std::uint64_t ys = 1; ys < half; ++ys) {
            const std::size_t j = 1 + static_cast<std::size_t>(__builtin_ctzll(ys));
            y[j] = -y[j];
            sign_y = -sign_y;
            s += 2.0 * y[j] * v[j];
            inner += static_cast<double>(sign_y) * int_pow(s, static_cast<unsigned>(m));
        }
        total += static_cast<double>(sign_x) * inner;
    }
    const double norm = static_cast<double>(half) * static_cast<double>(half) * to_double(factorial(static_cast<unsigned>(m)));
    return {total / norm, Algorithm::GlynnKan, half * half, false};
}

PermanentResult permanent_glynn_kan_repeated(const ComplexMatrix &a, const RepetitionPattern &pat, RootGrid mode) {
    require_pattern(a, pat);
    const unsigned n = pat.rows.weight();
    if (n != pat.cols.weight()) {
        return mismatch(Algorithm::GlynnKanRepeated);
    }
    if (n == 0) {
        return {Complex(1.0), Algorithm::GlynnKanRepeated, 1, false};
    }
    const std::size_t m = a.rows();
    const auto grids = choose_grids({&pat.rows, &pat.cols}, mode);
    const std::vector<unsigned> &ox = grids[0];
    const std::vector<unsigned> &oy = grids[1];
    const auto rx = root_tables(ox);
    const auto ry = root_tables(oy);

    std::vector<unsigned> kx(m, 0);
    std::vector<Complex> v(m);
    Complex total = 0.0;
    std::uint64_t terms = 0;
    do {
        const Complex wx = inverse_monomial(kx, ox, pat.rows);
        for (std::size_t j = 0; j < m; ++j) {
            v[j] = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                v[j] += rx[i][kx[i]] * a(i, j);
            }
        }
        std::vector<unsigned> ky(m, 0);
        Complex inner = 0.0;
        do {
            Complex s = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                s += v[j] * ry[j][ky[j]];
            }
            inner += inverse_monomial(ky, oy, pat.cols) * int_pow(s, n);
            ++terms;
        } while (advance(ky, oy));
        total += wx * inner;
    } while (advance(kx, ox));
    const double prefactor = to_double(factorial_product(pat.rows)) * to_double(factorial_product(pat.cols)) /
                             (static_cast<double>(terms) * to_double(factorial(n)));
    return {total * prefactor, Algorithm::GlynnKanRepeated, terms, false};
}

PermanentResult permanent_cauchy_binet(const ComplexMatrix &a, const ComplexMatrix &b, const RepetitionPattern &pat) {
    require_pattern(a, pat);
    require_square(b);
    if (a.rows() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "Cauchy-Binet requires equal dimensions");
    }
    const unsigned n = pat.rows.weight();
    if (n != pat.cols.weight()) {
        return mismatch(Algorithm::CauchyBinet);
    }
    const std::size_t m = a.rows();
    const std::uint64_t outer = count_weight(m, n);
    if (n > kGrayMaxDim || outer > kTermBudget || (outer << n) > kTermBudget) {
        throw Error(ErrorCode::TooLarge, "Cauchy-Binet sum exceeds the term budget");
    }
    Complex total = 0.0;
    for (const MultiIndex &k : enumerate_weight(m, n)) {
        const Complex left = permanent_ryser(repeat_matrix(a, {pat.rows, k})).value;
        if (left == 0.0) {
            continue;
        }
        const Complex right = permanent_ryser(repeat_matrix(b, {k, pat.cols})).value;
        total += left * right / to_double(factorial_product(k));
    }
    return {total, Algorithm::CauchyBinet, outer, false};
}

PermanentResult permanent_ryser_repeated(const ComplexMatrix &a, const RepetitionPattern &pat) {
    require_pattern(a, pat);
    if (!pat.square_compatible()) {
        return mismatch(Algorithm::RyserRepeated);
    }
    std::uint64_t terms = 1;
    for (unsigned qj : pat.cols) {
        terms *= qj + 1;
    }
    return {repeated_permanent_value(a, pat), Algorithm::RyserRepeated, terms, false};
}

PermanentResult permanent(Algorithm algo, const ComplexMatrix &a, const std::optional<RepetitionPattern> &pat_in,
                          const std::optional<ComplexMatrix> &b) {
    require_square(a);
    const RepetitionPattern pat = pat_in.value_or(RepetitionPattern::identity(a.rows()));
    require_pattern(a, pat);
    const bool trivial = pat == RepetitionPattern::identity(a.rows());
    auto on_repeated = [&](PermanentResult (*fn)(const ComplexMatrix &)) {
        if (!pat.square_compatible()) {
            return mismatch(algo);
        }
        return fn(trivial ? a : repeat_matrix(a, pat));
    };
    switch (algo) {
        case Algorithm::Naive: return on_repeated(permanent_naive);
        case Algorithm::Ryser: return on_repeated(permanent_ryser);
        case Algorithm::Glynn: return on_repeated(permanent_glynn);
        case Algorithm::GlynnKan: return on_repeated(permanent_glynn_kan);
        case Algorithm::GlynnRepeatedRows:
            if (pat.cols != MultiIndex::ones(a.rows())) {
                throw Error(ErrorCode::InvalidArgument, "glynn_repeated_rows takes column repetitions of all ones");
            }
            return permanent_glynn_repeated_rows(a, pat.rows);
        case Algorithm::GlynnRootsOfUnity: return permanent_roots_of_unity(a, pat);
        case Algorithm::GlynnKanRepeated: return permanent_glynn_kan_repeated(a, pat);
        case Algorithm::CauchyBinet:
            return permanent_cauchy_binet(a, b.value_or(ComplexMatrix::identity(a.rows())), pat);
        case Algorithm::RyserRepeated: return permanent_ryser_repeated(a, pat);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown algorithm");
}

Complex oracle_permanent(const ComplexMatrix &a, const RepetitionPattern &pat) {
    if (!pat.square_compatible()) {
        return 0.0;
    }
    if (pat.rows.weight() <= 8) {
        return naive_permanent_value(repeat_matrix(a, pat));
    }
    return repeated_permanent_value(a, pat);
}

mpq_class oracle_permanent_exact(const Matrix<mpq_class> &a, const RepetitionPattern &pat) {
    if (!pat.square_compatible()) {
        return 0;
    }
    if (pat.rows.weight() <= 8) {
        return naive_permanent_value(repeat_matrix(a, pat));
    }
    return repeated_permanent_value(a, pat);
}

}  // namespace permkit
