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

// Trace-level checks of the convergence inequalities of the gradient
// iteration. Each inequality lhs <= rhs is compared with slack
// 1e-9 * max(1, |lhs|, |rhs|); margins are reported relative to the same
// scale, so a check passes iff its worst margin is >= -1e-9.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "illposed/descent.hpp"
#include "illposed/functional.hpp"
#include "illposed/stop_rule.hpp"

namespace illposed
{

inline constexpr double kLemmaRelativeTolerance = 1e-9;

enum class Verdict
{
    pass,
    fail,
    inapplicable,
};

const char* to_string(Verdict v);

struct LemmaCheckResult
{
    std::string lemma_id;
    Verdict verdict = Verdict::pass;
    /// min over comparisons of (rhs - lhs) / max(1, |lhs|, |rhs|); empty
    /// when nothing was compared.
    std::optional<double> worst_margin;
    /// First violating step.
    std::optional<std::size_t> witness_step;
    /// Constants the check used, in insertion order.
    std::vector<std::pair<std::string, double>> context;
    /// Why an inapplicable check was skipped.
    std::string note;

    bool passed() const { return verdict == Verdict::pass; }
};

// Check identifiers, in the order the verify command runs them.
inline constexpr const char* kDescent = "descent";
inline constexpr const char* kErrorBound = "error_bound";
inline constexpr const char* kNoisyRecursion = "noisy_recursion";
inline constexpr const char* kNoisyUniform = "noisy_uniform";
inline constexpr const char* kSummability = "summability";
inline constexpr const char* kDivergenceRecursion = "divergence_recursion";

const std::vector<std::string>& lemma_ids();

/// Per step J_{k+1} - J_k <= (L - 1)|grad J_k|^2 and every partial sum
/// sum_{k<N} |grad J_k|^2 <= J_0 / |1 - L|.
LemmaCheckResult check_descent(const IterationTrace& trace, double L);

/// |e_k|^2 <= |e_0|^2 + (1 + 2 beta)+ J_0 / |1 - L| for every k.
LemmaCheckResult check_error_bound(const IterationTrace& trace, double beta,
                                   double L);

/// |x0 - x*|^2 + (1 + 2 beta)+ / |1 - L| J(x0) < rho^2: the initial-guess
/// smallness condition under which no exact iterate leaves the ball.
bool check_init_condition(const Vector& x0, const FunctionalModel& model,
                          double beta, const BallSpec& ball);

/// Left side of the initial-guess smallness condition.
double init_condition_lhs(const Vector& x0, const FunctionalModel& model,
                          double beta, const BallSpec& ball);

/// Noisy one-step recursion
///   |e_{k+1}|^2 <= |e_k|^2 + theta |g_k|^2 + 2 delta |e_k| + 4 beta+ delta^2
/// with g_k the noisy gradient. The margin of the beta = 0 variant is
/// reported in the context, not asserted.
LemmaCheckResult check_noisy_recursion(const IterationTrace& trace,
                                       const StopConstants& constants,
                                       double delta);

/// Uniform noisy bound, with C = theta / |1 - L_delta| J^delta_0:
///   |e_j|^2 + C - theta sum_{l<j} |g_l|^2 <= (sqrt(|e_0|^2 + C) + xi delta j)^2
/// for every j in the trace.
LemmaCheckResult check_noisy_uniform(const IterationTrace& trace,
                                     const StopConstants& constants,
                                     double delta, double Ld, double Jd0);

/// 2 sum_{k<N} |<grad J_k, e_k>| <= |e_0|^2 + (1 + 4 beta+) J_0 / |1 - L|
/// for every partial sum.
LemmaCheckResult check_summability(const IterationTrace& trace, double beta,
                                   double L);

/// Distance between a noisy and an exact run from the same x0:
///   d_{k+1} <= (1 + L) d_k + delta  and  d_k <= delta ((1 + L)^k - 1) / L.
LemmaCheckResult check_divergence_recursion(const IterationTrace& noisy_trace,
                                            const IterationTrace& exact_trace,
                                            double L, double delta);

/// Copy of `trace` corrupted at step 1 so that the named check must fail.
/// The corruption is far outside any of the bounds for sane constants.
/// Throws InvalidArgument for an unknown id or a trace with fewer than two
/// iterates.
IterationTrace inject_fault(const IterationTrace& trace, const std::string& lemma_id);

}  // namespace illposed
