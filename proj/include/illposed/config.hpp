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

// Experiment configuration, read from JSON. The key reference lives in
// docs/config.md. Every error raised here is a ConfigError, which the CLI
// maps to exit status 2.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "illposed/conditions.hpp"
#include "illposed/problems.hpp"

namespace illposed
{

struct ExperimentConfig
{
    std::string problem;
    /// Dimension of the quadratic, grid size of autoconv and ode-param.
    std::optional<std::size_t> dimension;
    std::optional<double> radius;
    std::optional<std::vector<double>> spectrum;
    std::optional<std::vector<double>> true_signal;
    std::optional<std::vector<double>> true_coefficient;
    std::optional<std::vector<double>> source;
    std::optional<double> step_scale;

    /// x0 - x*; empty selects the problem's default offset.
    std::optional<std::vector<double>> x0_offset;

    std::vector<double> noise_levels{1e-2};
    std::vector<std::uint64_t> seeds{1};
    double stop_c0 = 1.0;
    double stop_kappa = 0.5;
    std::size_t condition_samples = 1000;
    bool track_exact = true;
    std::optional<std::size_t> max_iter;
    std::string output_dir = "out";
    std::size_t workers = 1;

    Gamma diagnose_gamma = Gamma::finite(0.0);
    double diagnose_tau_gamma = 0.25;

    /// Check id whose input is corrupted before it runs (verify only).
    std::optional<std::string> inject_fault;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Throws ConfigError unless the noise ladder has >= 3 strictly
/// decreasing levels.
void require_study_ladder(const ExperimentConfig& config);

ProblemInstance build_problem(const ExperimentConfig& config);

/// x* + x0_offset. Throws ConfigError when the point lies outside the ball.
Vector initial_guess(const ExperimentConfig& config, const ProblemInstance& problem);

}  // namespace illposed
