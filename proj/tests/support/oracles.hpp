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

// Brute-force reference computations used by the tests. They share no code
// with the library routines they check: permanents come from
// std::next_permutation, determinants from cofactor expansion, eigenvalues
// from a textbook real Jacobi sweep.
#ifndef PERMKIT_TEST_ORACLES_HPP
#define PERMKIT_TEST_ORACLES_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "permkit/combinatorics.hpp"
#include "permkit/numerics.hpp"

namespace oracle {

using permkit::Complex;
using permkit::ComplexMatrix;
using permkit::Matrix;
using permkit::MultiIndex;

// Row and column index lists of A_{p,q}.
inline std::vector<std::size_t> expand(const MultiIndex &p) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (unsigned r = 0; r < p[i]; ++r) {
            out.push_back(i);
        }
    }
    return out;
}

template <typename T>
T permanent_by_permutations(const Matrix<T> &a, const MultiIndex &p, const MultiIndex &q) {
    const auto rows = expand(p);
    const auto cols = expand(q);
    if (rows.size() != cols.size()) {
        return T(0);
    }
    std::vector<std::size_t> perm(cols.size());
    std::iota(perm.begin(), perm.end(), 0);
    T total(0);
    do {
        T term(1);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            term *= a(rows[k], cols[perm[k]]);
        }
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

template <typename T>
T permanent_by_permutations(const Matrix<T> &a) {
    return permanent_by_permutations(a, MultiIndex::ones(a.rows()), MultiIndex::ones(a.cols()));
}

inline Complex permanent(const ComplexMatrix &a, const MultiIndex &p, const MultiIndex &q) {
    return permanent_by_permutations(a, p, q);
}

inline Complex permanent(const ComplexMatrix &a) {
    return permanent_by_permutations(a);
}

template <typename T>
T cofactor_determinant(const Matrix<T> &a) {
    const std::size_t n = a.rows();
    if (n == 0) {
        return T(1);
    }
    if (n == 1) {
        return a(0, 0);
    }
    T total(0);
    for (std::size_t j = 0; j < n; ++j) {
        Matrix<T> minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            for (std::size_t c = 0, cc = 0; c < n; ++c) {
                if (c != j) {
                    minor(r - 1, cc++) = a(r, c);
                }
            }
        }
        const T term = a(0, j) * cofactor_determinant(minor);
        if (j % 2 == 0) {
            total += term;
        } else {
            total -= term;
        }
    }
    return total;
}

// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> symmetric_eigenvalues(std::vector<std::vector<double>> s) {
    const std::size_t n = s.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                off += s[i][j] * s[i][j];
            }
        }
        if (off < 1e-30) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(s[p][q]) < 1e-300) {
                    continue;
                }
                const double theta = (s[q][q] - s[p][p]) / (2.0 * s[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double skp = s[k][p];
                    const double skq = s[k][q];
                    s[k][p] = c * skp - sn * skq;
                    s[k][q] = sn * skp + c * skq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double spk = s[p][k];
                    const double sqk = s[q][k];
                    s[p][k] = c * spk - sn * sqk;
                    s[q][k] = sn * spk + c * sqk;
                }
            }
        }
    }
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = s[i][i];
    }
    return out;
}

// Largest singular value: sqrt of the top eigenvalue of A^dagger A, via the
// real 2n x 2n embedding [[Re, -Im], [Im, Re]] of the Hermitian matrix.
inline double spectral_norm(const ComplexMatrix &a) {
    const std::size_t n = a.rows();
    std::vector<std::vector<double>> s(2 * n, std::vector<double>(2 * n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex h = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                h += std::conj(a(k, i)) * a(k, j);
            }
            s[i][j] = h.real();
            s[n + i][n + j] = h.real();
            s[i][n + j] = -h.imag();
            s[n + i][j] = h.imag();
        }
    }
    const auto ev = symmetric_eigenvalues(s);
    return std::sqrt(std::max(0.0, *std::max_element(ev.begin(), ev.end())));
}

inline mpz_class factorial(unsigned n) {
    mpz_class f = 1;
    for (unsigned k = 2; k <= n; ++k) {
        f *= k;
    }
    return f;
}

inline mpz_class binomial(unsigned n, unsigned k) {
    if (k > n) {
        return 0;
    }
    return factorial(n) / (factorial(k) * factorial(n - k));
}

inline double factorial_product(const MultiIndex &p) {
    double out = 1.0;
    for (unsigned v : p) {
        out *= factorial(v).get_d();
    }
    return out;
}

}  // namespace oracle

#endif
