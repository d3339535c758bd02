/*
 * Copyright 2026 The illposed-gd Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>

#include <gtest/gtest.h>

#include "illposed/random.hpp"

namespace illposed
{
namespace
{

TEST(SplitMix64, ReferenceOutputForSeedZero)
{
    // First output of the reference splitmix64 with state 0.
    SplitMix64 rng(0);
    EXPECT_EQ(rng.next(), 0xe220a8397b1dcdafULL);
}

TEST(SplitMix64, UniformInUnitInterval)
{
    SplitMix64 rng(5);
    for (int i = 0; i < 10000; ++i)
    {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(SplitMix64, IndexStaysInRange)
{
    SplitMix64 rng(6);
    for (int i = 0; i < 10000; ++i)
    {
        ASSERT_LT(rng.index(7), 7u);
    }
}

TEST(RandomDirection, IsUnit)
{
    SplitMix64 rng(7);
    for (std::size_t n = 1; n < 30; ++n)
    {
        EXPECT_NEAR(norm(random_direction(rng, n)), 1.0, 1e-14);
    }
}

TEST(SampleBall, DeterministicAndInside)
{
    const BallSpec ball(Vector{1.0, -2.0, 0.5}, 0.75);
    const auto a = sample_ball(ball, 500, 99);
    const auto b = sample_ball(ball, 500, 99);
    ASSERT_EQ(a.size(), 500u);
    EXPECT_EQ(a, b);
    std::size_t shell = 0;
    for (const Vector& x : a)
    {
        ASSERT_TRUE(ball.contains(x));
        if (distance(x, ball.center()) >= 0.9 * ball.radius() - 1e-12)
        {
            ++shell;
        }
    }
    // A quarter of the draws are shell draws by construction.
    EXPECT_GE(shell, 125u);
    EXPECT_NE(sample_ball(ball, 500, 100), a);
}

TEST(SampleBall, RayPointsComeInMirroredPairs)
{
    const BallSpec ball(Vector::zeros(4), 2.0);
    const auto pts = sample_ball(ball, 64, 3);
    // Draws 3 and 7 are the first two points of the first ray.
    EXPECT_NEAR(norm(pts[3] + pts[7]), 0.0, 1e-12);
    EXPECT_NEAR(norm(pts[3]), 2.0 / 8.0, 1e-12);
}

TEST(SampleAnnulus, RadiiWithinBounds)
{
    const BallSpec ball(Vector::zeros(3), 2.0, 0.5);
    const auto z = sample_annulus(ball, 400, 4);
    for (std::size_t i = 0; i < z.size(); ++i)
    {
        const double r = norm(z[i]);
        ASSERT_GE(r, 0.5 - 1e-12);
        ASSERT_LE(r, 2.0 + 1e-12);
        if (i % 4 == 1)
        {
            EXPECT_NEAR(r, 0.5, 1e-12);
        }
    }
}

TEST(DeriveSeed, DistinctLabelsGiveDistinctSeeds)
{
    EXPECT_NE(derive_seed(1, 1), derive_seed(1, 2));
    EXPECT_EQ(derive_seed(1, 1), derive_seed(1, 1));
}

}  // namespace
}  // namespace illposed
