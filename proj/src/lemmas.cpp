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

#include "illposed/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "illposed/errors.hpp"

namespace illposed
{

namespace
{

// Accumulates lhs <= rhs comparisons into a result.
class Ledger
{
public:
    explicit Ledger(LemmaCheckResult& result) : result_(result) {}

    void compare(double lhs, double rhs, std::size_t step)
    {
        const double margin = relative_margin(lhs, rhs);
        if (!result_.worst_margin || margin < *result_.worst_margin)
        {
            result_.worst_margin = margin;
        }
        if (margin < -kLemmaRelativeTolerance && !result_.witness_step)
        {
            result_.witness_step = step;
            result_.verdict = Verdict::fail;
        }
    }

    static double relative_margin(double lhs, double rhs)
    {
        const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        return (rhs - lhs) / scale;
    }

private:
    LemmaCheckResult& result_;
};

LemmaCheckResult make_result(const char* id)
{
    LemmaCheckResult r;
    r.lemma_id = id;
    return r;
}

LemmaCheckResult inapplicable(LemmaCheckResult r, std::string why)
{
    r.verdict = Verdict::inapplicable;
    r.note = std::move(why);
    return r;
}

double square(double x)
{
    return x * x;
}

bool lists_consistent(const IterationTrace& t)
{
    const std::size_t n = t.iterates.size();
    return n > 0 && t.errors.size() == n && t.values.size() == n
           && t.grad_norms.size() == n && t.inner_products.size() == n;
}

}  // namespace

const char* to_string(Verdict v)
{
    switch (v)
    {
        case Verdict::pass:
            return "pass";
        case Verdict::fail:
            return "fail";
        case Verdict::inapplicable:
            return "inapplicable";
    }
    return "unknown";
}

const std::vector<std::string>& lemma_ids()
{
    static const std::vector<std::string> ids{kDescent,       kErrorBound,
                                              kNoisyRecursion, kNoisyUniform,
                                              kSummability,   kDivergenceRecursion};
    return ids;
}

LemmaCheckResult check_descent(const IterationTrace& trace, double L)
{
    LemmaCheckResult r = make_result(kDescent);
    r.context = {{"L", L}};
    if (!lists_consistent(trace))
    {
        return inapplicable(std::move(r), "trace lists are empty or inconsistent");
    }
    if (trace.escaped())
    {
        return inapplicable(std::move(r), "trace left the ball");
    }
    if (!(L < 1.0))
    {
        return inapplicable(std::move(r), "needs L < 1");
    }
    Ledger ledger(r);
    const double budget = trace.values[0] / std::abs(1.0 - L);
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < trace.size(); ++k)
    {
        const double g2 = square(trace.grad_norms[k]);
        ledger.compare(trace.values[k + 1] - trace.values[k], (L - 1.0) * g2, k);
        sum += g2;
        ledger.compare(sum, budget, k);
    }
    r.context.emplace_back("gradient_square_sum", sum);
    r.context.emplace_back("bound", budget);
    return r;
}

LemmaCheckResult check_error_bound(const IterationTrace& trace, double beta,
                                   double L)
{
    LemmaCheckResult r = make_result(kErrorBound);
    r.context = {{"L", L}, {"beta", beta}};
    if (!lists_consistent(trace))
    {
        return inapplicable(std::move(r), "trace lists are empty or inconsistent");
    }
    if (trace.escaped())
    {
        return inapplicable(std::move(r), "trace left the ball");
    }
    if (!(L < 1.0))
    {
        return inapplicable(std::move(r), "needs L < 1");
    }
    const double bound = square(trace.errors[0])
                         + std::max(1.0 + 2.0 * beta, 0.0) * trace.values[0]
                               / std::abs(1.0 - L);
    r.context.emplace_back("bound", bound);
    Ledger ledger(r);
    for (std::size_t k = 0; k < trace.size(); ++k)
    {
        ledger.compare(square(trace.errors[k]), bound, k);
    }
    return r;
}

double init_condition_lhs(const Vector& x0, const FunctionalModel& model,
                          double beta, const BallSpec& ball)
{
    const double L = model.lipschitz();
    const double gap = std::abs(1.0 - L);
    const double e0 = squared_norm(x0 - ball.center());
    const double weight = std::max(1.0 + 2.0 * beta, 0.0);
    if (weight == 0.0)
    {
        return e0;
    }
    if (gap == 0.0)
    {
        return std::numeric_limits<double>::infinity();
    }
    return e0 + weight / gap * model.value(x0);
}

bool check_init_condition(const Vector& x0, const FunctionalModel& model,
                          double beta, const BallSpec& ball)
{
    return init_condition_lhs(x0, model, beta, ball) < square(ball.radius());
}

LemmaCheckResult check_noisy_recursion(const IterationTrace& trace,
                                       const StopConstants& constants,
                                       double delta)
{
    LemmaCheckResult r = make_result(kNoisyRecursion);
    r.context = {{"delta", delta},
                 {"beta", constants.beta},
                 {"theta", constants.theta},
                 {"xi", constants.xi}};
    if (!lists_consistent(trace))
    {
        return inapplicable(std::move(r), "trace lists are empty or inconsistent");
    }
    if (!trace.tracks_exact())
    {
        return inapplicable(std::move(r), "exact tracking was off for this run");
    }
    if (trace.escaped())
    {
        return inapplicable(std::move(r), "trace left the ball");
    }
    const double beta_plus = std::max(constants.beta, 0.0);
    Ledger ledger(r);
    std::optional<double> beta_zero_margin;
    for (std::size_t k = 0; k + 1 < trace.size(); ++k)
    {
        const double ek = trace.errors[k];
        const double lhs = square(trace.errors[k + 1]);
        const double base = square(ek) + 2.0 * delta * ek;
        const double g2 = square(trace.grad_norms[k]);
        ledger.compare(lhs, base + constants.theta * g2
                                + 4.0 * beta_plus * delta * delta,
                       k);
        const double m = Ledger::relative_margin(lhs, base + g2);
        beta_zero_margin = beta_zero_margin ? std::min(*beta_zero_margin, m) : m;
    }
    if (beta_zero_margin)
    {
        r.context.emplace_back("beta_zero_worst_margin", *beta_zero_margin);
    }
    return r;
}

LemmaCheckResult check_noisy_uniform(const IterationTrace& trace,
                                     const StopConstants& constants,
                                     double delta, double Ld, double Jd0)
{
    LemmaCheckResult r = make_result(kNoisyUniform);
    r.context = {{"delta", delta},          {"L_delta", Ld},
                 {"J_delta_0", Jd0},        {"beta", constants.beta},
                 {"theta", constants.theta}, {"xi", constants.xi}};
    if (!lists_consistent(trace))
    {
        return inapplicable(std::move(r), "trace lists are empty or inconsistent");
    }
    if (!trace.tracks_exact())
    {
        return inapplicable(std::move(r), "exact tracking was off for this run");
    }
    if (trace.escaped())
    {
        return inapplicable(std::move(r), "trace left the ball");
    }
    if (!(Ld < 1.0))
    {
        return inapplicable(std::move(r), "needs L_delta < 1");
    }
    const double c = constants.theta / std::abs(1.0 - Ld) * Jd0;
    const double root = std::sqrt(square(trace.errors[0]) + c);
    Ledger ledger(r);
    double sum = 0.0;
    for (std::size_t j = 0; j < trace.size(); ++j)
    {
        const double lhs = square(trace.errors[j]) + c - constants.theta * sum;
        const double rhs = square(root + constants.xi * delta * static_cast<double>(j));
        ledger.compare(lhs, rhs, j);
        sum += square(trace.grad_norms[j]);
    }
    return r;
}

LemmaCheckResult check_summability(const IterationTrace& trace, double beta,
                                   double L)
{
    LemmaCheckResult r = make_result(kSummability);
    r.context = {{"L", L}, {"beta", beta}};
    if (!lists_consistent(trace))
    {
        return inapplicable(std::move(r), "trace lists are empty or inconsistent");
    }
    if (trace.escaped())
    {
        return inapplicable(std::move(r), "trace left the ball");
    }
    if (!(L < 1.0))
    {
        return inapplicable(std::move(r), "needs L < 1");
    }
    const double bound = square(trace.errors[0])
                         + (1.0 + 4.0 * std::max(beta, 0.0)) * trace.values[0]
                               / std::abs(1.0 - L);
    Ledger ledger(r);
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < trace.size(); ++k)
    {
        sum += 2.0 * std::abs(trace.inner_products[k]);
        ledger.compare(sum, bound, k);
    }
    r.context.emplace_back("partial_sum", sum);
    r.context.emplace_back("bound", bound);
    return r;
}

LemmaCheckResult check_divergence_recursion(const IterationTrace& noisy_trace,
                                            const IterationTrace& exact_trace,
                                            double L, double delta)
{
    LemmaCheckResult r = make_result(kDivergenceRecursion);
    r.context = {{"L", L}, {"delta", delta}};
    if (noisy_trace.size() == 0 || exact_trace.size() < noisy_trace.size())
    {
        return inapplicable(std::move(r),
                            "exact trace does not cover the noisy trace");
    }
    if (!(noisy_trace.iterates[0] == exact_trace.iterates[0]))
    {
        return inapplicable(std::move(r), "traces start from different points");
    }
    Ledger ledger(r);
    double previous = 0.0;
    for (std::size_t k = 0; k + 1 < noisy_trace.size(); ++k)
    {
        const double d = distance(noisy_trace.iterates[k + 1], exact_trace.iterates[k + 1]);
        ledger.compare(d, (1.0 + L) * previous + delta, k);
        const double steps = static_cast<double>(k + 1);
        const double closed =
            L > 0.0 ? delta * (std::pow(1.0 + L, steps) - 1.0) / L : delta * steps;
        ledger.compare(d, closed, k);
        previous = d;
    }
    return r;
}

IterationTrace inject_fault(const IterationTrace& trace, const std::string& lemma_id)
{
    if (trace.size() < 2 || !lists_consistent(trace))
    {
        throw InvalidArgument("fault injection needs a trace with at least two iterates");
    }
    IterationTrace bad = trace;
    const double big = 1e8 * (1.0 + trace.errors[0] + std::sqrt(trace.values[0]));
    if (lemma_id == kDescent)
    {
        bad.values[1] = trace.values[0] + 1.0 + std::abs(trace.values[0]);
    }
    else if (lemma_id == kErrorBound || lemma_id == kNoisyRecursion
             || lemma_id == kNoisyUniform)
    {
        bad.errors[1] = big;
    }
    else if (lemma_id == kSummability)
    {
        bad.inner_products[0] = big * big;
    }
    else if (lemma_id == kDivergenceRecursion)
    {
        Vector x = trace.iterates[1];
        x.set(0, x[0] + big);
        bad.iterates[1] = std::move(x);
    }
    else
    {
        throw InvalidArgument("unknown check id '" + lemma_id + "'");
    }
    return bad;
}

}  // namespace illposed
