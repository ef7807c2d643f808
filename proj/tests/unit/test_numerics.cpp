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

#include <vector>

#include "oracles.hpp"
#include "permkit/error.hpp"
#include "permkit/numerics.hpp"
#include "permkit/random.hpp"

using namespace permkit;

namespace {

ComplexMatrix random_rect(std::size_t r, std::size_t c, Rng &rng) {
    return random_disk_matrix(r, c, rng);
}

}  // namespace

TEST(Determinant, IdentityIsOne) {
    EXPECT_NEAR(std::abs(determinant(ComplexMatrix::identity(3)) - 1.0), 0.0, 1e-15);
}

TEST(Determinant, SwapIsMinusOne) {
    const ComplexMatrix swap(2, 2, {0.0, 1.0, 1.0, 0.0});
    EXPECT_NEAR(std::abs(determinant(swap) + 1.0), 0.0, 1e-15);
}

TEST(Determinant, MatchesCofactorExpansion) {
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix a = random_disk_matrix(5, rng);
        EXPECT_LE(scaled_error(determinant(a), oracle::cofactor_determinant(a)), 1e-10);
    }
}

TEST(Determinant, SingularGivesZero) {
    const ComplexMatrix a(2, 2, {1.0, 2.0, 2.0, 4.0});
    EXPECT_LT(std::abs(determinant(a)), 1e-14);
}

TEST(Determinant, Multiplicative) {
    Rng rng(12);
    for (std::size_t m = 1; m <= 6; ++m) {
        const ComplexMatrix a = random_disk_matrix(m, rng);
        const ComplexMatrix b = random_disk_matrix(m, rng);
        EXPECT_LE(scaled_error(determinant(matrix_product(a, b)), determinant(a) * determinant(b)), 1e-8);
    }
}

TEST(Determinant, SylvesterIdentity) {
    Rng rng(13);
    for (std::size_t r = 1; r <= 4; ++r) {
        for (std::size_t c = 1; c <= 4; ++c) {
            const ComplexMatrix m = random_rect(r, c, rng);
            const ComplexMatrix n = random_rect(c, r, rng);
            const Complex lhs = determinant(ComplexMatrix::identity(r) + matrix_product(m, n));
            const Complex rhs = determinant(ComplexMatrix::identity(c) + matrix_product(n, m));
            EXPECT_LE(scaled_error(lhs, rhs), 1e-8);
        }
    }
}

TEST(SpectralNorm, Identity) {
    for (std::size_t m = 1; m <= 5; ++m) {
        EXPECT_NEAR(spectral_norm(ComplexMatrix::identity(m)), 1.0, 1e-12);
    }
}

TEST(SpectralNorm, Diagonal) {
    const std::vector<Complex> d{3.0, -1.0};
    EXPECT_NEAR(spectral_norm(diag_from_vector<Complex>(d)), 3.0, 1e-10);
}

TEST(SpectralNorm, ZeroMatrix) {
    EXPECT_EQ(spectral_norm(ComplexMatrix(3, 3)), 0.0);
}

TEST(SpectralNorm, MatchesJacobiOracle) {
    Rng rng(14);
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix a = random_disk_matrix(4, rng);
        const double ref = oracle::spectral_norm(a);
        EXPECT_NEAR(spectral_norm(a) / ref, 1.0, 1e-7);
    }
}

TEST(Helpers, IdentityTimesA) {
    Rng rng(15);
    const ComplexMatrix a = random_disk_matrix(3, rng);
    EXPECT_EQ(max_abs_diff(matrix_product(ComplexMatrix::identity(3), a), a), 0.0);
}

TEST(Helpers, AdjointOfProduct) {
    Rng rng(16);
    const ComplexMatrix a = random_disk_matrix(3, rng);
    const ComplexMatrix b = random_disk_matrix(3, rng);
    EXPECT_LE(max_abs_diff(adjoint(matrix_product(a, b)), matrix_product(adjoint(b), adjoint(a))), 1e-14);
}

TEST(Helpers, DiagFromVector) {
    const std::vector<Complex> x{Complex(1, 2), Complex(-3, 0)};
    const ComplexMatrix d = diag_from_vector<Complex>(x);
    EXPECT_EQ(d(0, 0), x[0]);
    EXPECT_EQ(d(1, 1), x[1]);
    EXPECT_EQ(d(0, 1), Complex(0.0));
    EXPECT_EQ(d(1, 0), Complex(0.0));
}

TEST(Helpers, ShapeErrors) {
    EXPECT_THROW(matrix_product(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), Error);
    EXPECT_THROW(ComplexMatrix(2, 2) + ComplexMatrix(3, 3), Error);
    EXPECT_THROW(ComplexMatrix(2, 3).dim(), Error);
}

TEST(Tolerance, RelativeAboveOneAbsoluteBelow) {
    EXPECT_TRUE(approx_equal(1e9 + 1.0, 1e9, 1e-8));
    EXPECT_FALSE(approx_equal(1e-3, 0.0, 1e-8));
    EXPECT_TRUE(approx_equal(1e-9, 0.0, 1e-8));
}

TEST(Unitary, RejectsNonUnitary) {
    try {
        UnitaryMatrix u(ComplexMatrix(2, 2, {1.0, 1.0, 0.0, 1.0}));
        FAIL() << "expected NotUnitary";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NotUnitary);
    }
}

TEST(Unitary, HaarIsUnitary) {
    Rng rng(17);
    for (std::size_t m = 1; m <= 6; ++m) {
        const UnitaryMatrix u = haar_unitary(m, rng);
        EXPECT_LE(max_abs_diff(matrix_product(adjoint(u.matrix()), u.matrix()), ComplexMatrix::identity(m)), 1e-10);
    }
}

TEST(HermitianEigen, ReconstructsMatrix) {
    Rng rng(18);
    const ComplexMatrix a = random_disk_matrix(4, rng);
    const ComplexMatrix h = matrix_product(adjoint(a), a);
    const HermitianEigen eig = hermitian_eigen(h);
    std::vector<Complex> vals(eig.values.begin(), eig.values.end());
    const ComplexMatrix back =
        matrix_product(matrix_product(eig.vectors, diag_from_vector<Complex>(vals)), adjoint(eig.vectors));
    EXPECT_LE(max_abs_diff(back, h), 1e-10);
    const ComplexMatrix r = hermitian_sqrt(h);
    EXPECT_LE(max_abs_diff(matrix_product(r, r), h), 1e-10);
}

TEST(EmbedContraction, ZeroOneByOne) {
    const UnitaryMatrix u = embed_contraction(ComplexMatrix(1, 1));
    EXPECT_EQ(u.dim(), 2u);
    EXPECT_NEAR(std::abs(u(0, 0)), 0.0, 1e-15);
}

TEST(EmbedContraction, IdentityBlock) {
    const UnitaryMatrix u = embed_contraction(ComplexMatrix::identity(2));
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            const Complex expected = (i < 2 && j < 2 && i == j) ? 1.0 : 0.0;
            if (i < 2 || j < 2) {
                EXPECT_NEAR(std::abs(u(i, j) - expected), 0.0, 1e-12) << i << "," << j;
            }
        }
    }
}

TEST(EmbedContraction, RandomContraction) {
    Rng rng(19);
    for (int t = 0; t < 10; ++t) {
        ComplexMatrix b = random_disk_matrix(3, rng);
        b = scale(b, Complex(0.999 / spectral_norm(b)));
        const UnitaryMatrix u = embed_contraction(b);
        EXPECT_LE(max_abs_diff(matrix_product(adjoint(u.matrix()), u.matrix()), ComplexMatrix::identity(6)), 1e-9);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                EXPECT_LE(std::abs(u(i, j) - b(i, j)), 1e-9);
            }
        }
    }
}

TEST(EmbedContraction, RejectsLargeNorm) {
    try {
        embed_contraction(scale(ComplexMatrix::identity(2), Complex(1.1)));
        FAIL() << "expected NormExceedsOne";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NormExceedsOne);
    }
}
