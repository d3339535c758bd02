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
#include <optional>
#include <vector>

#include "illposed/functional.hpp"
#include "illposed/linalg.hpp"
#include "illposed/stop_rule.hpp"

namespace illposed
{

// Record of a gradient iteration x_{k+1} = x_k - grad J(x_k).
//
// Every list has stopped_at + 1 entries, one per iterate inside the ball.
// The iteration is only defined inside the ball: an iterate that leaves it
// is kept in escape_point, not in the lists, and ends the run.
struct IterationTrace
{
    std::vector<Vector> iterates;
    /// |x_k - x*|
    std::vector<double> errors;
    /// J(x_k), or J^delta(x_k) for a noisy run.
    std::vector<double> values;
    /// J(x_k) along a noisy run; empty unless exact tracking was on.
    std::vector<double> exact_values;
    /// |grad J(x_k)| of the functional that drives the iteration.
    std::vector<double> grad_norms;
    /// <grad J(x_k), x_k - x*>
    std::vector<double> inner_products;

    /// Index of the first iterate outside the ball.
    std::optional<std::size_t> escaped_at;
    std::optional<Vector> escape_point;
    std::size_t stopped_at = 0;
    bool noisy = false;

    std::size_t size() const { return iterates.size(); }
    bool escaped() const { return escaped_at.has_value(); }
    bool tracks_exact() const { return !exact_values.empty(); }
};

/// Runs at most max_iter steps. Refuses x0 outside the ball.
IterationTrace run_exact(const FunctionalModel& model, const Vector& x0,
                         std::size_t max_iter);

/// Runs exactly `steps` noisy steps unless the iterate escapes. Refuses x0
/// outside the ball and L_delta >= 1, which the residual descent of the
/// noisy iteration needs.
IterationTrace run_noisy(const NoisyFunctional& noisy, const FunctionalModel& exact,
                         const Vector& x0, std::size_t steps,
                         bool track_exact = true);

/// As above with steps = stopping_index(stop, noisy.delta).
IterationTrace run_noisy(const NoisyFunctional& noisy, const FunctionalModel& exact,
                         const Vector& x0, const StoppingPolicy& stop,
                         bool track_exact = true);

}  // namespace illposed
