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
#include <cstddef>
#include <string>

#include <gtest/gtest.h>

#include "illposed/descent.hpp"
#include "illposed/errors.hpp"
#include "illposed/lemmas.hpp"
#include "illposed/problems.hpp"
#include "illposed/stop_rule.hpp"
#include "test_support.hpp"

namespace illposed
{
namespace
{

// J(x) = 0.25 x^2 on B_2(0): x_k = 0.5^k from x0 = 1.
ProblemInstance half_quadratic()
{
    return build_quadratic(1, {0.5}, 2.0);
}

IterationTrace half_trace(std::size_t steps, double x0 = 1.0)
{
    const ProblemInstance p = half_quadratic();
    return run_exact(p.exact, {x0}, steps);
}

double context_value(const LemmaCheckResult& r, const std::string& key)
{
    for (const auto& [k, v] : r.context)
    {
        if (k == key)
        {
            return v;
        }
    }
    ADD_FAILURE() << "missing context key " << key;
    return NAN;
}

TEST(Descent, GeometricSeries)
{
    const LemmaCheckResult r = check_descent(half_trace(200), 0.5);
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_EQ(r.lemma_id, "descent");
    EXPECT_NEAR(context_value(r, "gradient_square_sum"), 1.0 / 3.0, 1e-12);
    EXPECT_DOUBLE_EQ(context_value(r, "bound"), 0.5);
    ASSERT_TRUE(r.worst_margin.has_value());
    EXPECT_GE(*r.worst_margin, 0.0);
}

TEST(Descent, SingleIterateIsVacuous)
{
    const LemmaCheckResult r = check_descent(half_trace(0), 0.5);
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_FALSE(r.worst_margin.has_value());
}

TEST(Descent, UphillStepFails)
{
    IterationTrace t = half_trace(10);
    t.values[4] = t.values[3] + 0.1;
    const LemmaCheckResult r = check_descent(t, 0.5);
    EXPECT_EQ(r.verdict, Verdict::fail);
    ASSERT_TRUE(r.witness_step.has_value());
    EXPECT_EQ(*r.witness_step, 3u);
    EXPECT_LT(*r.worst_margin, -kLemmaRelativeTolerance);
}

TEST(Descent, InapplicableCases)
{
    IterationTrace t = half_trace(3);
    EXPECT_EQ(check_descent(t, 1.0).verdict, Verdict::inapplicable);
    t.escaped_at = 4;
    t.escape_point = Vector{3.0};
    const LemmaCheckResult r = check_descent(t, 0.5);
    EXPECT_EQ(r.verdict, Verdict::inapplicable);
    EXPECT_FALSE(r.note.empty());
    EXPECT_EQ(check_descent(IterationTrace{}, 0.5).verdict, Verdict::inapplicable);
}

TEST(ErrorBound, NegativeBetaAndZeroBeta)
{
    const IterationTrace t = half_trace(50);
    const LemmaCheckResult a = check_error_bound(t, -2.0, 0.5);
    EXPECT_EQ(a.verdict, Verdict::pass);
    EXPECT_DOUBLE_EQ(context_value(a, "bound"), 1.0);
    const LemmaCheckResult b = check_error_bound(t, 0.0, 0.5);
    EXPECT_EQ(b.verdict, Verdict::pass);
    EXPECT_DOUBLE_EQ(context_value(b, "bound"), 1.5);
}

TEST(ErrorBound, StationaryRun)
{
    const LemmaCheckResult r = check_error_bound(half_trace(10, 0.0), 1.0, 0.5);
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_DOUBLE_EQ(context_value(r, "bound"), 0.0);
}

TEST(InitCondition, Examples)
{
    const ProblemInstance p = half_quadratic();
    EXPECT_TRUE(check_init_condition({1.0}, p.exact, -2.0, p.ball()));
    EXPECT_DOUBLE_EQ(init_condition_lhs({1.0}, p.exact, -2.0, p.ball()), 1.0);
    EXPECT_TRUE(check_init_condition({0.0}, p.exact, 0.0, p.ball()));
    // Boundary point with beta >= 0: |x0|^2 = rho^2 already.
    EXPECT_FALSE(check_init_condition({2.0}, p.exact, 0.0, p.ball()));
    EXPECT_DOUBLE_EQ(init_condition_lhs({2.0}, p.exact, 0.0, p.ball()), 4.0 + 1.0 / 0.5);
}

TEST(NoisyRecursion, NoiselessQuadratic)
{
    const ProblemInstance p = build_quadratic(3, default_quadratic_spectrum(3));
    const Vector x0 = p.ball().center() + p.default_x0_offset;
    const IterationTrace t = run_noisy(noiseless(p.exact), p.exact, x0, 50);
    EXPECT_EQ(check_noisy_recursion(t, stop_constants(-2.0), 0.0).verdict, Verdict::pass);
}

TEST(NoisyRecursion, QuadraticWithNoise)
{
    const ProblemInstance p = build_quadratic(3, default_quadratic_spectrum(3));
    const Vector x0 = p.ball().center() + p.default_x0_offset;
    const NoisyFunctional n = make_noisy(p.op, p.exact, 1e-3, 4);
    const IterationTrace t = run_noisy(n, p.exact, x0, 20);
    const LemmaCheckResult r =
        check_noisy_recursion(t, stop_constants(inflate_beta(*p.facts.beta)), n.delta);
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_TRUE(std::isfinite(context_value(r, "beta_zero_worst_margin")));
}

TEST(NoisyRecursion, InapplicableWithoutExactTracking)
{
    const ProblemInstance p = half_quadratic();
    const IterationTrace t = run_noisy(noiseless(p.exact), p.exact, {1.0}, 5, false);
    EXPECT_EQ(check_noisy_recursion(t, stop_constants(0.0), 0.0).verdict,
              Verdict::inapplicable);
    EXPECT_EQ(check_noisy_uniform(t, stop_constants(0.0), 0.0, 0.5, 0.25).verdict,
              Verdict::inapplicable);
}

TEST(NoisyUniform, NoiselessAndNoisyQuadratic)
{
    const ProblemInstance p = build_quadratic(3, default_quadratic_spectrum(3));
    const Vector x0 = p.ball().center() + p.default_x0_offset;
    const IterationTrace t0 = run_noisy(noiseless(p.exact), p.exact, x0, 50);
    EXPECT_EQ(check_noisy_uniform(t0, stop_constants(-2.0), 0.0, p.exact.lipschitz(),
                                  t0.values[0])
                  .verdict,
              Verdict::pass);

    const NoisyFunctional n = make_noisy(p.op, p.exact, 1e-3, 4);
    const IterationTrace t = run_noisy(n, p.exact, x0, 20);
    const StopConstants c = stop_constants(inflate_beta(*p.facts.beta));
    EXPECT_EQ(c.theta, 1.0);
    EXPECT_EQ(c.xi, 1.0);
    const LemmaCheckResult r =
        check_noisy_uniform(t, c, n.delta, n.lipschitz_noisy, t.values[0]);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(NoisyUniform, BaseCaseIsEquality)
{
    // A one-iterate trace compares only j = 0, where both sides coincide.
    const ProblemInstance p = half_quadratic();
    const IterationTrace t = run_noisy(noiseless(p.exact), p.exact, {1.0}, 0);
    const LemmaCheckResult r = check_noisy_uniform(t, stop_constants(0.0), 0.0, 0.5, 0.25);
    EXPECT_EQ(r.verdict, Verdict::pass);
    ASSERT_TRUE(r.worst_margin.has_value());
    EXPECT_NEAR(*r.worst_margin, 0.0, 1e-15);
}

TEST(NoisyUniform, NeedsNoisyLipschitzBelowOne)
{
    const ProblemInstance p = half_quadratic();
    const IterationTrace t = run_noisy(noiseless(p.exact), p.exact, {1.0}, 3);
    EXPECT_EQ(check_noisy_uniform(t, stop_constants(0.0), 0.0, 1.0, 0.25).verdict,
              Verdict::inapplicable);
}

TEST(Summability, GeometricSeries)
{
    const LemmaCheckResult r = check_summability(half_trace(200), -2.0, 0.5);
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_NEAR(context_value(r, "partial_sum"), 4.0 / 3.0, 1e-12);
    EXPECT_DOUBLE_EQ(context_value(r, "bound"), 1.5);
}

TEST(Summability, StationaryRun)
{
    const LemmaCheckResult r = check_summability(half_trace(10, 0.0), 0.0, 0.5);
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_EQ(context_value(r, "partial_sum"), 0.0);
}

TEST(Summability, PartialSumIncrementsVanish)
{
    const IterationTrace t = half_trace(150);
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < t.size(); ++k)
    {
        const double inc = 2.0 * std::abs(t.inner_products[k]);
        EXPECT_GE(inc, 0.0);
        if (k > 100)
        {
            EXPECT_LT(inc, 1e-12);
        }
        sum += inc;
    }
    EXPECT_LE(sum, 1.5);
}

TEST(DivergenceRecursion, IdenticalRunsAndNoisyRun)
{
    const ProblemInstance p = build_quadratic(3, default_quadratic_spectrum(3));
    const Vector x0 = p.ball().center() + p.default_x0_offset;
    const IterationTrace exact = run_exact(p.exact, x0, 10);
    const IterationTrace same = run_noisy(noiseless(p.exact), p.exact, x0, 10);
    EXPECT_EQ(check_divergence_recursion(same, exact, p.exact.lipschitz(), 0.0).verdict,
              Verdict::pass);

    const NoisyFunctional n = make_noisy(p.op, p.exact, 1e-3, 2);
    const IterationTrace noisy = run_noisy(n, p.exact, x0, 10);
    const LemmaCheckResult r =
        check_divergence_recursion(noisy, exact, p.exact.lipschitz(), n.delta);
    EXPECT_EQ(r.verdict, Verdict::pass);
    // First step: |x1^d - x1| = |grad J^d(x0) - grad J(x0)| <= delta.
    EXPECT_LE(distance(noisy.iterates[1], exact.iterates[1]), n.delta);
}

TEST(DivergenceRecursion, LengthMismatchIsInapplicable)
{
    const IterationTrace shorter = half_trace(3);
    const IterationTrace longer = half_trace(6);
    EXPECT_EQ(check_divergence_recursion(longer, shorter, 0.5, 0.0).verdict,
              Verdict::inapplicable);
    EXPECT_EQ(check_divergence_recursion(half_trace(3, 0.5), longer, 0.5, 0.0).verdict,
              Verdict::inapplicable);
}

// Every check flags its injected fault; the corruption of one check leaves
// the trace recognizably different only at step 1.
TEST(FaultInjection, EveryCheckFlagsItsFault)
{
    const ProblemInstance p = build_quadratic(3, default_quadratic_spectrum(3));
    const Vector x0 = p.ball().center() + p.default_x0_offset;
    const NoisyFunctional n = make_noisy(p.op, p.exact, 1e-3, 2);
    const IterationTrace exact = run_exact(p.exact, x0, 20);
    const IterationTrace noisy = run_noisy(n, p.exact, x0, 20);
    const StopConstants c = stop_constants(inflate_beta(*p.facts.beta));
    const double L = p.exact.lipschitz();
    const double beta = c.beta;

    auto run = [&](const std::string& id, const IterationTrace& ex,
                   const IterationTrace& no) -> LemmaCheckResult
    {
        if (id == kDescent) return check_descent(ex, L);
        if (id == kErrorBound) return check_error_bound(ex, beta, L);
        if (id == kNoisyRecursion) return check_noisy_recursion(no, c, n.delta);
        if (id == kNoisyUniform)
            return check_noisy_uniform(no, c, n.delta, n.lipschitz_noisy, no.values[0]);
        if (id == kSummability) return check_summability(ex, beta, L);
        return check_divergence_recursion(no, ex, L, n.delta);
    };

    for (const std::string& id : lemma_ids())
    {
        EXPECT_EQ(run(id, exact, noisy).verdict, Verdict::pass) << id;
        const bool noisy_input = id == kNoisyRecursion || id == kNoisyUniform
                                 || id == kDivergenceRecursion;
        const IterationTrace bad_exact = noisy_input ? exact : inject_fault(exact, id);
        const IterationTrace bad_noisy = noisy_input ? inject_fault(noisy, id) : noisy;
        const LemmaCheckResult r = run(id, bad_exact, bad_noisy);
        EXPECT_EQ(r.verdict, Verdict::fail) << id;
        ASSERT_TRUE(r.witness_step.has_value()) << id;
        EXPECT_LE(*r.witness_step, 1u) << id;
    }
}

TEST(FaultInjection, RejectsUnknownIdAndShortTrace)
{
    EXPECT_THROW(inject_fault(half_trace(3), "no_such_check"), InvalidArgument);
    EXPECT_THROW(inject_fault(half_trace(0), kDescent), InvalidArgument);
}

TEST(LemmaProperty, ChecksArePure)
{
    const IterationTrace t = half_trace(30);
    const LemmaCheckResult a = check_summability(t, 0.1, 0.5);
    const LemmaCheckResult b = check_summability(t, 0.1, 0.5);
    EXPECT_EQ(a.worst_margin, b.worst_margin);
    EXPECT_EQ(a.context, b.context);
    EXPECT_EQ(to_string(Verdict::inapplicable), std::string("inapplicable"));
}

// Random quadratics, random starts satisfying the initial-guess smallness
// condition: no escape, and every exact check passes.
TEST(LemmaProperty, ExactChecksPassOnRandomQuadratics)
{
    testing::Gen gen(17);
    for (int trial = 0; trial < 60; ++trial)
    {
        const std::size_t n = gen.size(1, 6);
        std::vector<double> spectrum(n);
        double top = 0.0;
        for (double& s : spectrum)
        {
            s = gen.uniform(0.05, 0.95);
            top = std::max(top, s);
        }
        const ProblemInstance p = build_quadratic(n, spectrum, 2.0);
        const Vector x0 = gen.in_ball(p.ball(), 0.95);
        const double beta = inflate_beta(-1.0 / top);
        ASSERT_TRUE(check_init_condition(x0, p.exact, beta, p.ball()));
        const IterationTrace t = run_exact(p.exact, x0, 100);
        ASSERT_FALSE(t.escaped());
        ASSERT_TRUE(check_descent(t, top).passed());
        ASSERT_TRUE(check_error_bound(t, beta, top).passed());
        ASSERT_TRUE(check_summability(t, beta, top).passed());
    }
}

}  // namespace
}  // namespace illposed
