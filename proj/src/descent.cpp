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

#include "illposed/descent.hpp"

#include "illposed/errors.hpp"

namespace illposed
{

namespace
{

IterationTrace iterate(const FunctionalModel& driver, const FunctionalModel* exact,
                       const Vector& x0, std::size_t steps, bool noisy)
{
    const BallSpec& ball = driver.domain();
    require_same_size(x0, ball.center());
    if (ball.escaped(x0))
    {
        throw Refusal("initial guess lies outside the ball");
    }
    IterationTrace trace;
    trace.noisy = noisy;
    trace.iterates.reserve(steps + 1);

    Vector x = x0;
    for (std::size_t k = 0;; ++k)
    {
        const Vector g = driver.gradient(x);
        const Vector e = x - ball.center();
        trace.errors.push_back(norm(e));
        trace.values.push_back(driver.value(x));
        if (exact != nullptr)
        {
            trace.exact_values.push_back(exact->value(x));
        }
        trace.grad_norms.push_back(norm(g));
        trace.inner_products.push_back(inner(g, e));
        trace.iterates.push_back(x);
        trace.stopped_at = k;
        if (k == steps)
        {
            break;
        }
        Vector next = x - g;
        if (ball.escaped(next))
        {
            trace.escaped_at = k + 1;
            trace.escape_point = std::move(next);
            break;
        }
        x = std::move(next);
    }
    return trace;
}

}  // namespace

IterationTrace run_exact(const FunctionalModel& model, const Vector& x0,
                         std::size_t max_iter)
{
    return iterate(model, nullptr, x0, max_iter, false);
}

IterationTrace run_noisy(const NoisyFunctional& noisy, const FunctionalModel& exact,
                         const Vector& x0, std::size_t steps, bool track_exact)
{
    if (!(noisy.lipschitz_noisy < 1.0))
    {
        throw Refusal(
            "noisy iteration needs L_delta < 1 for monotone residual descent");
    }
    return iterate(noisy.model, track_exact ? &exact : nullptr, x0, steps, true);
}

IterationTrace run_noisy(const NoisyFunctional& noisy, const FunctionalModel& exact,
                         const Vector& x0, const StoppingPolicy& stop,
                         bool track_exact)
{
    return run_noisy(noisy, exact, x0, stopping_index(stop, noisy.delta),
                     track_exact);
}

}  // namespace illposed
