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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "permkit/error.hpp"
#include "permkit/random.hpp"
#include "permkit/series.hpp"

using namespace permkit;

namespace {

using Q = TruncatedSeries<mpq_class>;
using C = TruncatedSeries<Complex>;

Q random_rational_series(const MultiIndex &caps, Rng &rng, const mpq_class &constant) {
    Q s(caps);
    for (std::size_t k = 0; k < s.size(); ++k) {
        s[k] = random_rational(rng, 5);
    }
    s[0] = constant;
    return s;
}

C random_complex_series(const MultiIndex &caps, Rng &rng, Complex constant) {
    C s(caps);
    for (std::size_t k = 0; k < s.size(); ++k) {
        s[k] = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
    }
    s[0] = constant;
    return s;
}

}  // namespace

TEST(Series, Layout) {
    const MultiIndex caps{2, 3, 1};
    const Q s(caps);
    EXPECT_EQ(s.size(), 3u * 4u * 2u);
    for (std::size_t k = 0; k < s.size(); ++k) {
        EXPECT_EQ(s.index_of(s.exponent_of(k)), k);
    }
    EXPECT_THROW(s.coefficient({3, 0, 0}), Error);
}

TEST(Series, ProductExamples) {
    const MultiIndex caps{2};
    const Q z = Q::variable(caps, 0);
    const Q one = Q::constant(caps, 1);
    const Q prod = (one + z) * (one - z);
    EXPECT_EQ(prod.coefficient({0}), 1);
    EXPECT_EQ(prod.coefficient({1}), 0);
    EXPECT_EQ(prod.coefficient({2}), -1);

    Rng rng(41);
    const Q s = random_rational_series({2, 2}, rng, 3);
    EXPECT_EQ(s * Q::constant({2, 2}, 1), s);

    const MultiIndex caps2{3, 3};
    const Q xy = Q::variable(caps2, 0) + Q::variable(caps2, 1);
    EXPECT_EQ(xy.pow(3).coefficient({2, 1}), 3);
    EXPECT_EQ(xy.pow(2).coefficient({1, 1}), 2);
}

TEST(Series, CapMismatch) {
    try {
        Q({2}) + Q({3});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::CapMismatch);
    }
}

TEST(Series, RingAxiomsExact) {
    Rng rng(42);
    const MultiIndex caps{2, 1, 2};
    for (int t = 0; t < 5; ++t) {
        const Q a = random_rational_series(caps, rng, random_rational(rng));
        const Q b = random_rational_series(caps, rng, random_rational(rng));
        const Q c = random_rational_series(caps, rng, random_rational(rng));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + b, b + a);
    }
}

TEST(Series, RingAxiomsFloat) {
    Rng rng(43);
    const MultiIndex caps{2, 2};
    const C a = random_complex_series(caps, rng, 0.5);
    const C b = random_complex_series(caps, rng, 0.25);
    const C c = random_complex_series(caps, rng, -1.0);
    EXPECT_LE(max_coefficient_error(a * b, b * a), 1e-10);
    EXPECT_LE(max_coefficient_error((a * b) * c, a * (b * c)), 1e-10);
    EXPECT_LE(max_coefficient_error(a * (b + c), a * b + a * c), 1e-10);
}

TEST(Series, InverseExamples) {
    const MultiIndex caps{5};
    const Q geometric = (Q::constant(caps, 1) - Q::variable(caps, 0)).inverse();
    for (unsigned k = 0; k <= 5; ++k) {
        EXPECT_EQ(geometric.coefficient({k}), 1);
    }
    EXPECT_EQ(Q::constant(caps, 1).inverse(), Q::constant(caps, 1));
    try {
        Q::variable(caps, 0).inverse();
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NonInvertibleConstantTerm);
    }
}

TEST(Series, InverseRoundTripExact) {
    Rng rng(44);
    for (int t = 0; t < 5; ++t) {
        const Q s = random_rational_series({2, 3}, rng, 1);
        EXPECT_EQ(s.inverse().inverse(), s);
        EXPECT_EQ(s * s.inverse(), Q::constant({2, 3}, 1));
    }
}

TEST(Series, SqrtInverseExamples) {
    const MultiIndex caps{6};
    EXPECT_EQ(Q::constant(caps, 1).sqrt_inverse(), Q::constant(caps, 1));
    const Q one_minus = Q::constant(caps, 1) - Q::variable(caps, 0);
    const Q r = (one_minus * one_minus).sqrt_inverse();
    for (unsigned k = 0; k <= 6; ++k) {
        EXPECT_EQ(r.coefficient({k}), 1);
    }
    try {
        Q::constant(caps, 4).sqrt_inverse();
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::ConstantTermNotOne);
    }
}

TEST(Series, SqrtInverseRoundTripExact) {
    Rng rng(45);
    for (int t = 0; t < 5; ++t) {
        const Q s = random_rational_series({3, 2}, rng, 1);
        const Q r = s.sqrt_inverse();
        EXPECT_EQ(r * r * s, Q::constant({3, 2}, 1));
    }
}

TEST(Series, ExpLogExamples) {
    const MultiIndex caps{6};
    const Q e = Q::variable(caps, 0).exp();
    for (unsigned k = 0; k <= 6; ++k) {
        EXPECT_EQ(e.coefficient({k}), mpq_class(1, oracle::factorial(k)));
    }
    const Q l = (Q::constant(caps, 1) - Q::variable(caps, 0)).inverse().log();
    EXPECT_EQ(l.coefficient({0}), 0);
    for (unsigned k = 1; k <= 6; ++k) {
        EXPECT_EQ(l.coefficient({k}), mpq_class(1, k));
    }
    try {
        Q::constant(caps, 1).exp();
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::BadConstantTerm);
    }
    try {
        Q::constant(caps, 2).log();
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::BadConstantTerm);
    }
}

TEST(Series, ExpLogRoundTrip) {
    Rng rng(46);
    for (int t = 0; t < 5; ++t) {
        const Q s = random_rational_series({2, 2}, rng, 1);
        EXPECT_EQ(s.log().exp(), s);
        const C c = random_complex_series({3, 2}, rng, 1.0);
        EXPECT_LE(max_coefficient_error(c.log().exp(), c), 1e-10);
    }
}

TEST(DetSeries, Examples) {
    const MultiIndex caps{3};
    const Q z = Q::variable(caps, 0);
    SeriesMatrix<mpq_class> zi(2);
    zi[0] = {z, Q(caps)};
    zi[1] = {Q(caps), z};
    const Q det = det_series(identity_minus(zi));
    const Q one_minus = Q::constant(caps, 1) - z;
    EXPECT_EQ(det, one_minus * one_minus);

    Rng rng(47);
    SeriesMatrix<mpq_class> diag(3, std::vector<Q>(3, Q({2, 2})));
    Q prod = Q::constant({2, 2}, 1);
    for (int i = 0; i < 3; ++i) {
        diag[i][i] = random_rational_series({2, 2}, rng, random_rational(rng));
        prod = prod * diag[i][i];
    }
    EXPECT_EQ(det_series(diag), prod);
}

TEST(DetSeries, DixonAgainstCofactorExpansion) {
    // Det(I - Diag(z) A) for the Dixon matrix is a polynomial; compare every
    // coefficient with the cofactor expansion evaluated symbolically at random
    // rational points (a polynomial of degree <= 1 per variable is fixed by its
    // values on {0, 1, 2}^3).
    const Matrix<mpq_class> a(3, 3, {0, 1, -1, -1, 0, 1, 1, -1, 0});
    const MultiIndex caps{1, 1, 1};
    const Q det = det_series(identity_minus(series_matrix_product(diagonal_variables<mpq_class>(caps, 0, 3),
                                                                  constant_series_matrix(a, caps))));
    for (const auto &point : enumerate_box({2, 2, 2})) {
        Matrix<mpq_class> m(3, 3);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                m(i, j) = (i == j ? mpq_class(1) : mpq_class(0)) - mpq_class(point[i]) * a(i, j);
            }
        }
        mpq_class value = 0;
        for (std::size_t k = 0; k < det.size(); ++k) {
            const MultiIndex e = det.exponent_of(k);
            mpq_class mono = det[k];
            for (std::size_t i = 0; i < 3; ++i) {
                mono *= int_pow(mpq_class(point[i]), e[i]);
            }
            value += mono;
        }
        EXPECT_EQ(value, oracle::cofactor_determinant(m));
    }
}

TEST(DetSeries, TotalDegreeAtMostM) {
    Rng rng(48);
    const ComplexMatrix a = random_disk_matrix(3, rng);
    const MultiIndex caps{3, 3, 3};
    const C det = det_series(identity_minus(
        series_matrix_product(diagonal_variables<Complex>(caps, 0, 3), constant_series_matrix(a, caps))));
    for (std::size_t k = 0; k < det.size(); ++k) {
        if (det.exponent_of(k).weight() > 3) {
            EXPECT_EQ(det[k], Complex(0.0));
        }
    }
}

TEST(Series, Coefficients) {
    EXPECT_EQ(Q::constant({2}, 1).coefficient({0}), 1);
    const MultiIndex caps{2, 2};
    const Q xy = Q::variable(caps, 0) + Q::variable(caps, 1);
    EXPECT_EQ(xy.pow(2).coefficient({1, 1}), 2);
}

TEST(Series, ComposeAndRescale) {
    const MultiIndex caps{4};
    const Q z = Q::variable(caps, 0);
    // exp(z) composed from its coefficient list equals exp().
    std::vector<mpq_class> exp_coeffs;
    for (unsigned k = 0; k <= 4; ++k) {
        exp_coeffs.emplace_back(1, oracle::factorial(k));
    }
    EXPECT_EQ(compose(exp_coeffs, z), z.exp());
    const Q scaled = z.exp().rescale({mpq_class(2)});
    for (unsigned k = 0; k <= 4; ++k) {
        mpq_class expected(int_pow(mpz_class(2), k), oracle::factorial(k));
        expected.canonicalize();
        EXPECT_EQ(scaled.coefficient({k}), expected);
    }
}
