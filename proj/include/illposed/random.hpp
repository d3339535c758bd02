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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "illposed/linalg.hpp"

namespace illposed
{

// SplitMix64: a counter-based 64-bit generator. Output k is a fixed mixing
// function of seed + k * golden_gamma, so streams are reproducible on every
// platform. Distributions are implemented here rather than taken from
// <random>, whose distribution algorithms are implementation-defined.
class SplitMix64
{
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal via Box-Muller (cosine branch only).
    double normal();
    /// Uniform index in [0, bound).
    std::size_t index(std::size_t bound);

private:
    std::uint64_t state_;
};

/// Derives an independent stream seed from a base seed and a label.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label);

/// Unit vector with uniformly distributed direction.
Vector random_direction(SplitMix64& rng, std::size_t dimension);

/// Uniform draw from the ball (Gaussian direction, radius * u^(1/n)).
Vector uniform_in_ball(SplitMix64& rng, const BallSpec& ball);

// Deterministic sample set used by every estimator. The set mixes
//   - uniform draws over the ball,
//   - near-boundary shell draws (0.9 rho <= |x - x*| <= rho),
//   - points on rays through x* at radii +-j/8 rho.
// Identical (ball, count, seed) give bitwise identical sets.
std::vector<Vector> sample_ball(const BallSpec& ball, std::size_t count,
                                std::uint64_t seed);

/// Offsets z with inner_radius <= |z| <= radius.
std::vector<Vector> sample_annulus(const BallSpec& ball, std::size_t count,
                                   std::uint64_t seed);

}  // namespace illposed
