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

#include "illposed/stop_rule.hpp"

#include <algorithm>
#include <cmath>

#include "illposed/errors.hpp"

namespace illposed
{

StopConstants stop_constants(double beta)
{
    const double plus = std::max(beta, 0.0);
    return {beta, 1.0 + 4.0 * plus, std::max(1.0, 2.0 * std::sqrt(plus))};
}

double inflate_beta(double beta)
{
    return beta + 0.05 * std::abs(beta);
}

void StoppingPolicy::validate() const
{
    if (!(c0 > 0.0) || !std::isfinite(c0))
    {
        throw InvalidArgument("stop.c0 must be positive");
    }
    if (!(kappa > 0.0 && kappa < 1.0))
    {
        throw InvalidArgument("stop.kappa must lie in (0, 1)");
    }
    if (!(rho > 0.0) || !std::isfinite(rho))
    {
        throw InvalidArgument("stopping rule needs a positive radius");
    }
    if (!(xi >= 1.0) || !std::isfinite(xi))
    {
        throw InvalidArgument("stopping rule needs xi >= 1");
    }
}

std::size_t stopping_index(const StoppingPolicy& policy, double delta)
{
    policy.validate();
    if (!(delta > 0.0) || !std::isfinite(delta))
    {
        throw InvalidArgument("stopping index needs delta > 0");
    }
    const double cap_bound = policy.rho / (2.0 * policy.xi);
    const double rate = std::floor(policy.c0 * std::pow(delta, -policy.kappa));
    const double cap = std::floor(cap_bound / delta) - 1.0;
    const double n = std::max(0.0, std::min(rate, cap));
    // Guard against an enormous count from a tiny delta.
    constexpr double kMax = 1e15;
    auto index = static_cast<std::size_t>(std::min(n, kMax));
    // floor() of a rounded quotient can overshoot by one; enforce the cap
    // clause in floating point exactly as it is checked.
    while (index > 0 && static_cast<double>(index + 1) * delta > cap_bound)
    {
        --index;
    }
    return index;
}

}  // namespace illposed
