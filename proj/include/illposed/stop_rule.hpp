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

namespace illposed
{

// Constants of the noisy error recursion derived from the angle-condition
// parameter beta:
//   theta = 1 + 4 beta+,  xi = max(1, 2 sqrt(beta+)).
struct StopConstants
{
    double beta = 0.0;
    double theta = 1.0;
    double xi = 1.0;
};

StopConstants stop_constants(double beta);

/// beta + 0.05 |beta|: the safety margin applied to estimated or analytic
/// beta before constants are derived from it.
double inflate_beta(double beta);

// A-priori stopping index
//   N = min(floor(c0 delta^-kappa), floor(rho / (2 xi delta)) - 1),
// clamped at 0. Satisfies N -> inf, N delta -> 0 and (N + 1) delta <= rho/(2 xi).
struct StoppingPolicy
{
    double c0 = 1.0;
    double kappa = 0.5;
    double rho = 1.0;
    double xi = 1.0;

    /// Throws InvalidArgument unless c0 > 0, 0 < kappa < 1, rho > 0, xi >= 1.
    void validate() const;
};

std::size_t stopping_index(const StoppingPolicy& policy, double delta);

}  // namespace illposed
