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

#include <set>

#include "oracles.hpp"
#include "permkit/combinatorics.hpp"
#include "permkit/error.hpp"

using namespace permkit;

TEST(MultiIndex, WeightAndOrder) {
    const MultiIndex p{2, 0, 3};
    EXPECT_EQ(p.weight(), 5u);
    EXPECT_TRUE(MultiIndex({1, 0, 3}).dominated_by(p));
    EXPECT_FALSE(MultiIndex({3, 0, 0}).dominated_by(p));
    EXPECT_EQ(p + MultiIndex({1, 1, 1}), MultiIndex({3, 1, 4}));
    EXPECT_EQ(p - MultiIndex({1, 0, 1}), MultiIndex({1, 0, 2}));
    EXPECT_THROW(p - MultiIndex({0, 1, 0}), Error);
    EXPECT_EQ(p.concat(MultiIndex{7}), MultiIndex({2, 0, 3, 7}));
}

TEST(FactorialProduct, Examples) {
    EXPECT_EQ(factorial_product({0, 0, 0}), 1);
    EXPECT_EQ(factorial_product({2, 1, 3}), 12);
    EXPECT_EQ(factorial_product({5, 5}), 14400);
}

TEST(FactorialProduct, NoOverflow) {
    EXPECT_EQ(factorial(25), oracle::factorial(25));
    EXPECT_EQ(binomial(60, 30), oracle::binomial(60, 30));
    EXPECT_EQ(multinomial({2, 1, 1}), 12);
}

TEST(RepeatMatrix, RowsThenColumns) {
    const Matrix<int> a(2, 2, {1, 2, 3, 4});
    const Matrix<int> r = repeat_matrix(a, {{2, 1}, {1, 2}});
    EXPECT_EQ(r, Matrix<int>(3, 3, {1, 2, 2, 1, 2, 2, 3, 4, 4}));
}

TEST(RepeatMatrix, OnesIsIdentityTransform) {
    const Matrix<int> a(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
    EXPECT_EQ(repeat_matrix(a, RepetitionPattern::identity(3)), a);
}

TEST(RepeatMatrix, ZerosGiveEmpty) {
    const Matrix<int> a(2, 2, {1, 2, 3, 4});
    const Matrix<int> r = repeat_matrix(a, {{0, 0}, {0, 0}});
    EXPECT_EQ(r.rows(), 0u);
    EXPECT_EQ(r.cols(), 0u);
}

TEST(RepeatMatrix, ShapeMatchesWeights) {
    const Matrix<int> a(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
    for (const auto &p : enumerate_box({2, 1, 2})) {
        for (const auto &q : enumerate_box({1, 2, 1})) {
            const Matrix<int> r = repeat_matrix(a, {p, q});
            EXPECT_EQ(r.rows(), p.weight());
            EXPECT_EQ(r.cols(), q.weight());
        }
    }
}

TEST(EnumerateWeight, SmallCases) {
    const auto two = enumerate_weight(2, 2);
    ASSERT_EQ(two.size(), 3u);
    EXPECT_EQ(two[0], MultiIndex({0, 2}));
    EXPECT_EQ(two[1], MultiIndex({1, 1}));
    EXPECT_EQ(two[2], MultiIndex({2, 0}));
    const auto zero = enumerate_weight(3, 0);
    ASSERT_EQ(zero.size(), 1u);
    EXPECT_EQ(zero[0], MultiIndex({0, 0, 0}));
    EXPECT_EQ(enumerate_weight(3, 4).size(), 15u);
}

TEST(EnumerateWeight, StarsAndBars) {
    for (std::size_t m = 1; m <= 6; ++m) {
        for (unsigned n = 0; n <= 10; ++n) {
            const auto all = enumerate_weight(m, n);
            const mpz_class expected = oracle::binomial(n + static_cast<unsigned>(m) - 1, static_cast<unsigned>(m) - 1);
            EXPECT_EQ(mpz_class(static_cast<unsigned long>(all.size())), expected);
            EXPECT_EQ(count_weight(m, n), all.size());
            EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
            for (const auto &p : all) {
                EXPECT_EQ(p.weight(), n);
            }
        }
    }
}

TEST(EnumerateBox, CountAndBounds) {
    const MultiIndex caps{2, 0, 3};
    const auto all = enumerate_box(caps);
    EXPECT_EQ(all.size(), 3u * 1u * 4u);
    for (const auto &p : all) {
        EXPECT_TRUE(p.dominated_by(caps));
    }
}

TEST(EnumerateSplits, Examples) {
    const auto s = enumerate_splits({1, 0}, 2);
    ASSERT_EQ(s.size(), 2u);
    const std::set<std::vector<MultiIndex>> got(s.begin(), s.end());
    EXPECT_TRUE(got.count({MultiIndex{1, 0}, MultiIndex{0, 0}}));
    EXPECT_TRUE(got.count({MultiIndex{0, 0}, MultiIndex{1, 0}}));
    EXPECT_EQ(enumerate_splits({1, 1}, 2).size(), 4u);
    EXPECT_EQ(enumerate_splits({2, 1}, 3).size(), 18u);
}

TEST(EnumerateSplits, WeightFilterAndSums) {
    const MultiIndex p{2, 1, 1};
    const auto splits = enumerate_splits(p, 3, {1, 1, std::nullopt});
    EXPECT_FALSE(splits.empty());
    for (const auto &s : splits) {
        EXPECT_EQ(s[0].weight(), 1u);
        EXPECT_EQ(s[1].weight(), 1u);
        EXPECT_EQ(s[0] + s[1] + s[2], p);
    }
    // Unfiltered count is prod_k C(p_k + 2, 2).
    EXPECT_EQ(enumerate_splits(p, 3).size(), 6u * 3u * 3u);
}

TEST(GrayCode, VisitsEveryMaskOnce) {
    std::set<std::uint64_t> seen{0};
    std::uint64_t mask = 0;
    for_each_gray_flip(5, [&](std::uint64_t, unsigned bit) {
        mask ^= std::uint64_t{1} << bit;
        EXPECT_TRUE(seen.insert(mask).second);
    });
    EXPECT_EQ(seen.size(), 32u);
}
