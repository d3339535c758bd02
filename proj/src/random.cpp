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

#include "illposed/random.hpp"

#include <cmath>
#include <numbers>

namespace illposed
{

std::uint64_t SplitMix64::next()
{
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform()
{
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::normal()
{
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1))
           * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t SplitMix64::index(std::size_t bound)
{
    return static_cast<std::size_t>(uniform() * static_cast<double>(bound))
           % bound;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label)
{
    SplitMix64 mixer(seed ^ (label * 0xd1b54a32d192ed03ULL));
    return mixer.next();
}

Vector random_direction(SplitMix64& rng, std::size_t dimension)
{
    std::vector<double> v(dimension);
    double len = 0.0;
    while (len < 1e-12)
    {
        len = 0.0;
        for (double& x : v)
        {
            x = rng.normal();
            len += x * x;
        }
        len = std::sqrt(len);
    }
    for (double& x : v)
    {
        x /= len;
    }
    return Vector(std::move(v));
}

Vector uniform_in_ball(SplitMix64& rng, const BallSpec& ball)
{
    const auto n = static_cast<double>(ball.dimension());
    const Vector d = random_direction(rng, ball.dimension());
    const double r = ball.radius() * std::pow(rng.uniform(), 1.0 / n);
    Vector x = ball.center();
    x.axpy(r, d);
    return x;
}

std::vector<Vector> sample_ball(const BallSpec& ball, std::size_t count,
                                std::uint64_t seed)
{
    constexpr std::size_t kRayPoints = 8;
    SplitMix64 rng(seed);
    std::vector<Vector> points;
    points.reserve(count);
    Vector ray_direction = random_direction(rng, ball.dimension());
    std::size_t ray_slot = 0;
    for (std::size_t i = 0; i < count; ++i)
    {
        switch (i % 4)
        {
            case 2:
            {
                const Vector d = random_direction(rng, ball.dimension());
                const double r = ball.radius() * (0.9 + 0.1 * rng.uniform());
                Vector x = ball.center();
                x.axpy(r, d);
                points.push_back(std::move(x));
                break;
            }
            case 3:
            {
                if (ray_slot == 2 * kRayPoints)
                {
                    ray_direction = random_direction(rng, ball.dimension());
                    ray_slot = 0;
                }
                // Alternate sides of x* so every ray carries mirrored pairs.
                const double sign = (ray_slot % 2 == 0) ? 1.0 : -1.0;
                const double t =
                    static_cast<double>(ray_slot / 2 + 1) / kRayPoints;
                Vector x = ball.center();
                x.axpy(sign * t * ball.radius(), ray_direction);
                points.push_back(std::move(x));
                ++ray_slot;
                break;
            }
            default:
                points.push_back(uniform_in_ball(rng, ball));
                break;
        }
        // Rounding in the axpy can push boundary draws a hair outside.
        while (!ball.contains(points.back()))
        {
            Vector offset = points.back() - ball.center();
            offset *= (1.0 - 1e-14);
            points.back() = ball.center() + offset;
        }
    }
    return points;
}

std::vector<Vector> sample_annulus(const BallSpec& ball, std::size_t count,
                                   std::uint64_t seed)
{
    SplitMix64 rng(seed);
    std::vector<Vector> offsets;
    offsets.reserve(count);
    const double lo = ball.inner_radius();
    const double hi = ball.radius();
    for (std::size_t i = 0; i < count; ++i)
    {
        Vector d = random_direction(rng, ball.dimension());
        // Every fourth draw sits on one of the two shells.
        double r = lo + (hi - lo) * rng.uniform();
        if (i % 4 == 1)
        {
            r = lo;
        }
        else if (i % 4 == 3)
        {
            r = hi;
        }
        offsets.push_back(d * r);
    }
    return offsets;
}

}  // namespace illposed
