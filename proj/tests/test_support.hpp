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

#pragma once

// Generators for property tests. They use std::mt19937_64 so that test
// inputs do not share a generator with the samplers under test.

#include <cmath>
#include <random>
#include <vector>

#include "illposed/linalg.hpp"

namespace illposed::testing
{

class Gen
{
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    std::size_t size(std::size_t lo, std::size_t hi)
    {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
    }

    Vector vector(std::size_t n, double scale = 1.0)
    {
        std::vector<double> v(n);
        for (double& x : v)
        {
            x = uniform(-scale, scale);
        }
        return Vector(std::move(v));
    }

    /// Point strictly inside the ball, at most `fraction` of the radius away.
    Vector in_ball(const BallSpec& ball, double fraction = 0.9)
    {
        Vector d = vector(ball.dimension());
        while (norm(d) == 0.0)
        {
            d = vector(ball.dimension());
        }
        const double r = fraction * ball.radius() * uniform(0.0, 1.0);
        return ball.center() + d * (r / norm(d));
    }

private:
    std::mt19937_64 engine_;
};

inline double rel_diff(double a, double b)
{
    return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)});
}

}  // namespace illposed::testing
