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

// Drivers behind the run / study / diagnose / verify commands.
//
// A sweep evaluates one cell per (noise level, seed). Cells run on a pool
// of worker threads but results are stored by cell index and every file is
// written after the pool has joined, so artifacts do not depend on the
// worker count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "illposed/config.hpp"
#include "illposed/descent.hpp"
#include "illposed/functional.hpp"
#include "illposed/lemmas.hpp"
#include "illposed/problems.hpp"
#include "illposed/stop_rule.hpp"

namespace illposed
{

// Everything derived from a config before any iteration runs.
struct Setup
{
    ExperimentConfig config;
    ProblemInstance problem;
    Vector x0;
    /// beta of N(0, beta) before the 5% safety margin, and where it came
    /// from: "analytic", "estimated", or "fallback" (estimate inconclusive).
    double beta_raw = 0.0;
    std::string beta_source;
    StopConstants constants;
    StoppingPolicy policy;
    /// Inflated sampled sup |F'| and the phi bound built from it.
    double jacobian_sup = 0.0;
    PhiBound phi;
};

Setup prepare(const ExperimentConfig& config);

struct Cell
{
    std::size_t level_index = 0;
    double noise_level = 0.0;
    std::uint64_t seed = 0;
    NoisyFunctional noisy;
    std::size_t n_delta = 0;
    /// Empty when the noisy run was refused; see refusal.
    std::optional<IterationTrace> trace;
    std::string refusal;
};

struct Sweep
{
    std::optional<IterationTrace> exact;
    std::size_t exact_max_iter = 0;
    std::vector<Cell> cells;
};

/// Runs every cell, and the exact iteration when with_exact is set.
Sweep run_sweep(const Setup& setup, std::size_t workers, bool with_exact);

/// 10 N of the smallest noise level, at most 10^6, unless max_iter is set.
std::size_t default_exact_max_iter(const Setup& setup, const Sweep& sweep);

// Reported smallness conditions of the noisy convergence theorem.
struct SmallnessReport
{
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// |e0|^2 + 2 theta/|1-L| J(x0) + theta phi(J(x0)) <= rho^2 / 16
SmallnessReport initial_smallness(const Setup& setup);

struct NoiseSmallness
{
    SmallnessReport delta_clause;  // delta < (1 - L) / 2
    SmallnessReport phi_clause;    // phi(J0 + psi) <= phi(J0) + rho^2 / (8 theta)
    SmallnessReport psi_clause;    // 2 theta / |1 - L| psi <= rho^2 / 8
    bool holds() const
    {
        return delta_clause.holds && phi_clause.holds && psi_clause.holds;
    }
};

NoiseSmallness noise_smallness(const Setup& setup, const NoisyFunctional& noisy);

enum class TrendVerdict
{
    decreasing,
    non_monotone,
    inconclusive,
};

const char* to_string(TrendVerdict v);

struct StudyRow
{
    double noise_level = 0.0;
    std::uint64_t seed = 0;
    double delta = 0.0;
    std::size_t n_delta = 0;
    double final_error = 0.0;
    std::optional<double> final_J;
    double min_error = 0.0;
    bool escaped = false;
    bool refused = false;
    bool zero_iterations = false;
};

struct StudyResult
{
    std::vector<StudyRow> rows;
    std::vector<double> levels;
    std::vector<double> median_final_error;
    TrendVerdict verdict = TrendVerdict::inconclusive;
};

// decreasing: every rung satisfies m_{i+1} < 1.05 m_i and the last median
// is below the first. inconclusive: an escape or refusal at one of the two
// smallest levels. non_monotone otherwise.
TrendVerdict trend_verdict(const std::vector<double>& medians,
                           bool trouble_at_smallest_levels);

StudyResult summarize_study(const Sweep& sweep);

struct ScopedCheck
{
    /// "exact" or "noisy"
    std::string scope;
    std::optional<double> noise_level;
    std::optional<std::uint64_t> seed;
    LemmaCheckResult result;
};

/// Every check on the sweep; the injected fault, if any, corrupts the
/// input of that check only.
std::vector<ScopedCheck> verify_sweep(const Setup& setup, const Sweep& sweep);

struct CommandOptions
{
    std::optional<std::string> out_dir;
    std::optional<std::size_t> workers;
    bool gnuplot = false;
};

// Exit status: 0 success, 1 failed check. Invalid configurations raise
// ConfigError, which the CLI maps to 2.
int cmd_run(const ExperimentConfig& config, const CommandOptions& options,
            std::ostream& out);
int cmd_study(const ExperimentConfig& config, const CommandOptions& options,
              std::ostream& out);
int cmd_diagnose(const ExperimentConfig& config, const CommandOptions& options,
                 std::ostream& out);
int cmd_verify(const ExperimentConfig& config, const CommandOptions& options,
               std::ostream& out);

/// Command-line entry point: illposed-gd run|study|diagnose|verify ...
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace illposed
