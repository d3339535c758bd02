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
#include <string>
#include <vector>

#include "illposed/functional.hpp"
#include "illposed/linalg.hpp"

namespace illposed
{

// Constants known in closed form for a problem. Empty fields are unknown
// and have to be estimated.
struct AnalyticFacts
{
    /// Lipschitz constant of the scaled gradient.
    std::optional<double> lipschitz;
    /// Upper bounds for the weak and strong tangential cone constants.
    std::optional<double> eta_weak;
    std::optional<double> eta_strong;
    /// beta for which N(0, beta) holds.
    std::optional<double> beta;
    /// tau(gamma) = sqrt(gamma) for the balancing condition.
    bool tau_is_sqrt_gamma = false;
};

struct ProblemInstance
{
    std::string name;
    OperatorModel op;
    /// Least-squares functional at exact data, step scale included.
    FunctionalModel exact;
    AnalyticFacts facts;
    /// x0 - x* used when a config does not give one.
    Vector default_x0_offset;

    const BallSpec& ball() const { return op.domain(); }
};

// Linear F(x) = A^{1/2} x with A = diag(spectrum), x* = 0, so that
// J(x) = step_scale/2 x^T A x. Spectrum values must lie in (0, 1).
ProblemInstance build_quadratic(std::size_t dimension,
                                const std::vector<double>& spectrum,
                                double radius = 2.0, double step_scale = 1.0);

/// 0.5 (i + 1)^-2, i = 0..dimension-1
std::vector<double> default_quadratic_spectrum(std::size_t dimension);

// Scalar F(x) = x + x^2, y = 0, x* = 0 on B_radius(0); radius < 0.25.
// The remainder is F(x) - F(z) - F'(x)(x - z) = -(x - z)^2.
// Without a step scale, 0.9 / L_unscaled is used.
ProblemInstance build_scalar_quadratic_operator(
    double radius, std::optional<double> step_scale = std::nullopt);

// Rectangle-rule auto-convolution on [0, 1]:
//   F(x)_i = 1/n sum_{j <= i} x_{i-j} x_j.
ProblemInstance build_autoconvolution(
    std::size_t grid_size, const Vector& true_signal, double radius,
    std::optional<double> step_scale = std::nullopt);

/// 1 + 0.5 sin(2 pi t_i) at cell midpoints t_i = (i + 1/2) / n.
Vector default_autoconvolution_signal(std::size_t grid_size);

// Coefficient identification for -u'' + c u = f on (0, 1), u(0) = u(1) = 0,
// with second-order central differences on n interior nodes. F(c) = u(c).
ProblemInstance build_ode_parameter_id(
    std::size_t grid_size, const Vector& true_coefficient, const Vector& source,
    double radius, std::optional<double> step_scale = std::nullopt);

/// 1 + sin(pi t_i) at the interior nodes t_i = i / (n + 1).
Vector default_ode_coefficient(std::size_t grid_size);
/// Constant source 100.
Vector default_ode_source(std::size_t grid_size);

/// Solves (K / h^2 + diag(c)) u = f with K = tridiag(-1, 2, -1), h = 1/(n+1).
/// Throws NumericalError on a vanishing pivot.
Vector solve_ode_system(const Vector& coefficient, const Vector& rhs);

/// Registered problem names.
const std::vector<std::string>& problem_names();

}  // namespace illposed
