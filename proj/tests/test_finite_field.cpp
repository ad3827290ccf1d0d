// Copyright 2026 The teelab Authors
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

#include <random>

#include <gtest/gtest.h>

#include "teelab/finite_field.hpp"

using namespace teelab;
using namespace teelab::ff;

TEST(PrimeField, Inverses) {
    for (int p : {2, 3, 5, 7, 251}) {
        const PrimeField f(p);
        for (int a = 1; a < p; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1) << p << " " << a;
        EXPECT_EQ(f.reduce(-1), p - 1);
        EXPECT_EQ(f.neg(0), 0);
    }
    EXPECT_THROW(PrimeField(4), InvalidGeometry);
    EXPECT_THROW(PrimeField(257), InvalidGeometry);
    EXPECT_TRUE(is_prime(2));
    EXPECT_FALSE(is_prime(1));
    EXPECT_FALSE(is_prime(91));
}

TEST(FpMatrix, KnownRanks) {
    FpMatrix m(3, 3, 3);
    // Rows (1,2,0), (2,1,0), (0,0,1): second row is 2 x first over F_3.
    m.set(0, 0, 1);
    m.set(0, 1, 2);
    m.set(1, 0, 2);
    m.set(1, 1, 1);
    m.set(2, 2, 1);
    EXPECT_EQ(std::move(m).rank(), 2u);

    FpMatrix same(3, 3, 5);
    same.set(0, 0, 1);
    same.set(0, 1, 2);
    same.set(1, 0, 2);
    same.set(1, 1, 1);
    same.set(2, 2, 1);
    EXPECT_EQ(std::move(same).rank(), 3u);
}

TEST(BitMatrix, MatchesFpMatrixOnRandomInput) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t rows = 1 + rng() % 90, cols = 1 + rng() % 150;
        BitMatrix b(rows, cols);
        FpMatrix f(rows, cols, 2);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) {
                const bool v = (rng() % 3) == 0;
                b.set(r, c, v);
                f.set(r, c, v);
            }
        EXPECT_EQ(std::move(b).rank(), std::move(f).rank());
    }
}

TEST(BitMatrix, IdentityAndDuplicates) {
    BitMatrix b(130, 130);
    for (std::size_t i = 0; i < 130; ++i) b.set(i, i, true);
    EXPECT_EQ(std::move(b).rank(), 130u);
    BitMatrix d(4, 70);
    for (std::size_t r = 0; r < 4; ++r) d.set(r, 69, true);
    EXPECT_TRUE(d.get(2, 69));
    EXPECT_EQ(std::move(d).rank(), 1u);
}
