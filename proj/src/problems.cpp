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

#include "illposed/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "illposed/errors.hpp"

namespace illposed
{

namespace
{

constexpr double kStepTarget = 0.9;

double resolve_step(std::optional<double> step_scale, double unscaled_lipschitz)
{
    if (step_scale)
    {
        if (!(*step_scale > 0.0) || !std::isfinite(*step_scale))
        {
            throw InvalidArgument("step_scale must be positive");
        }
        return *step_scale;
    }
    if (!(unscaled_lipschitz > 0.0))
    {
        return 1.0;
    }
    return kStepTarget / unscaled_lipschitz;
}

void require_radius(double radius)
{
    if (!(radius > 0.0) || !std::isfinite(radius))
    {
        throw InvalidArgument("radius must be positive");
    }
}

Vector scaled_unit(const Vector& direction, double length)
{
    return direction * (length / norm(direction));
}

}  // namespace

std::vector<double> default_quadratic_spectrum(std::size_t dimension)
{
    std::vector<double> spectrum(dimension);
    for (std::size_t i = 0; i < dimension; ++i)
    {
        const double k = static_cast<double>(i + 1);
        spectrum[i] = 0.5 / (k * k);
    }
    return spectrum;
}

ProblemInstance build_quadratic(std::size_t dimension,
                                const std::vector<double>& spectrum,
                                double radius, double step_scale)
{
    if (dimension == 0)
    {
        throw InvalidArgument("dimension must be at least 1");
    }
    if (spectrum.size() != dimension)
    {
        throw DimensionError("spectrum length must equal dimension");
    }
    for (double s : spectrum)
    {
        if (!(s > 0.0 && s < 1.0))
        {
            throw InvalidArgument("spectrum values must lie in (0, 1)");
        }
    }
    require_radius(radius);
    if (!(step_scale > 0.0) || !std::isfinite(step_scale))
    {
        throw InvalidArgument("step_scale must be positive");
    }

    std::vector<double> roots(dimension);
    std::transform(spectrum.begin(), spectrum.end(), roots.begin(),
                   [](double s) { return std::sqrt(s); });
    const Vector root(roots);
    auto apply = [root](const Vector& x) { return hadamard(root, x); };
    auto linear = [root](const Vector&, const Vector& h) { return hadamard(root, h); };

    const BallSpec ball(Vector::zeros(dimension), radius);
    OperatorModel op(apply, linear, linear, Vector::zeros(dimension), ball);

    const double lambda_max = *std::max_element(spectrum.begin(), spectrum.end());
    LeastSquaresOptions ls;
    ls.unscaled_lipschitz = lambda_max;
    FunctionalModel exact = least_squares_functional(op, op.data(), step_scale, ls);

    AnalyticFacts facts;
    facts.lipschitz = step_scale * lambda_max;
    facts.eta_weak = 0.0;
    facts.eta_strong = 0.0;
    facts.beta = -1.0 / (step_scale * lambda_max);
    facts.tau_is_sqrt_gamma = true;

    return {"quadratic", std::move(op), std::move(exact), facts,
            scaled_unit(Vector(dimension, 1.0), 1.0)};
}

ProblemInstance build_scalar_quadratic_operator(double radius,
                                                std::optional<double> step_scale)
{
    require_radius(radius);
    if (radius >= 0.25)
    {
        throw InvalidArgument(
            "scalar problem needs radius < 0.25 (cone constant would reach 1)");
    }
    auto apply = [](const Vector& x) { return Vector{x[0] + x[0] * x[0]}; };
    auto linear = [](const Vector& x, const Vector& h)
    { return Vector{(1.0 + 2.0 * x[0]) * h[0]}; };

    const BallSpec ball(Vector{0.0}, radius);
    OperatorModel op(apply, linear, linear, Vector{0.0}, ball);

    // grad = (1 + 2x)(x + x^2) = x + 3x^2 + 2x^3, whose derivative
    // 1 + 6x + 6x^2 is largest at x = radius on [-radius, radius].
    const double unscaled = 1.0 + 6.0 * radius + 6.0 * radius * radius;
    const double step = resolve_step(step_scale, unscaled);
    LeastSquaresOptions ls;
    ls.unscaled_lipschitz = unscaled;
    FunctionalModel exact = least_squares_functional(op, op.data(), step, ls);

    AnalyticFacts facts;
    facts.lipschitz = step * unscaled;
    // -x/(1+x) for the weak ratio, |x - z| / |1 + x + z| for the strong one.
    facts.eta_weak = radius / (1.0 - radius);
    facts.eta_strong = 2.0 * radius / (1.0 - 2.0 * radius);

    return {"scalar-quadratic", std::move(op), std::move(exact), facts,
            Vector{0.5 * radius}};
}

Vector default_autoconvolution_signal(std::size_t grid_size)
{
    std::vector<double> v(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i)
    {
        const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(grid_size);
        v[i] = 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * t);
    }
    return Vector(std::move(v));
}

ProblemInstance build_autoconvolution(std::size_t grid_size,
                                      const Vector& true_signal, double radius,
                                      std::optional<double> step_scale)
{
    if (grid_size < 8)
    {
        throw InvalidArgument("auto-convolution needs grid_size >= 8");
    }
    if (true_signal.size() != grid_size)
    {
        throw DimensionError("true_signal length must equal grid_size");
    }
    require_radius(radius);
    const std::size_t n = grid_size;
    const double w = 1.0 / static_cast<double>(n);

    auto apply = [n, w](const Vector& x)
    {
        std::vector<double> out(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
        {
            double sum = 0.0;
            for (std::size_t j = 0; j <= i; ++j)
            {
                sum += x[i - j] * x[j];
            }
            out[i] = w * sum;
        }
        return Vector(std::move(out));
    };
    auto jacobian = [n, w](const Vector& x, const Vector& h)
    {
        std::vector<double> out(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
        {
            double sum = 0.0;
            for (std::size_t j = 0; j <= i; ++j)
            {
                sum += x[i - j] * h[j];
            }
            out[i] = 2.0 * w * sum;
        }
        return Vector(std::move(out));
    };
    auto adjoint = [n, w](const Vector& x, const Vector& v)
    {
        std::vector<double> out(n, 0.0);
        for (std::size_t j = 0; j < n; ++j)
        {
            double sum = 0.0;
            for (std::size_t i = j; i < n; ++i)
            {
                sum += x[i - j] * v[i];
            }
            out[j] = 2.0 * w * sum;
        }
        return Vector(std::move(out));
    };

    const BallSpec ball(true_signal, radius);
    OperatorModel op(apply, jacobian, adjoint, apply(true_signal), ball);

    const double unscaled = least_squares_lipschitz(op, op.data());
    const double step = resolve_step(step_scale, unscaled);
    LeastSquaresOptions ls;
    ls.unscaled_lipschitz = unscaled;
    FunctionalModel exact = least_squares_functional(op, op.data(), step, ls);

    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        d[i] = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.5) * w);
    }
    return {"autoconv", std::move(op), std::move(exact), AnalyticFacts{},
            scaled_unit(Vector(std::move(d)), 0.25 * radius)};
}

Vector default_ode_coefficient(std::size_t grid_size)
{
    std::vector<double> c(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i)
    {
        const double t = static_cast<double>(i + 1) / static_cast<double>(grid_size + 1);
        c[i] = 1.0 + std::sin(std::numbers::pi * t);
    }
    return Vector(std::move(c));
}

Vector default_ode_source(std::size_t grid_size)
{
    return Vector(grid_size, 100.0);
}

Vector solve_ode_system(const Vector& coefficient, const Vector& rhs)
{
    require_same_size(coefficient, rhs);
    const std::size_t n = coefficient.size();
    const double h = 1.0 / static_cast<double>(n + 1);
    const double off = -1.0 / (h * h);
    const double diag = 2.0 / (h * h);
    constexpr double kPivotFloor = 1e-300;

    // Thomas algorithm; the matrix is symmetric tridiagonal.
    std::vector<double> c_prime(n, 0.0);
    std::vector<double> d_prime(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
    {
        double pivot = diag + coefficient[i];
        double rhs_i = rhs[i];
        if (i > 0)
        {
            pivot -= off * c_prime[i - 1];
            rhs_i -= off * d_prime[i - 1];
        }
        if (std::abs(pivot) < kPivotFloor || !std::isfinite(pivot))
        {
            throw NumericalError("ODE system matrix is singular for this coefficient");
        }
        c_prime[i] = off / pivot;
        d_prime[i] = rhs_i / pivot;
    }
    std::vector<double> u(n, 0.0);
    for (std::size_t k = n; k-- > 0;)
    {
        u[k] = d_prime[k] - (k + 1 < n ? c_prime[k] * u[k + 1] : 0.0);
    }
    return Vector(std::move(u));
}

ProblemInstance build_ode_parameter_id(std::size_t grid_size,
                                       const Vector& true_coefficient,
                                       const Vector& source, double radius,
                                       std::optional<double> step_scale)
{
    if (grid_size < 8)
    {
        throw InvalidArgument("ODE problem needs grid_size >= 8");
    }
    if (true_coefficient.size() != grid_size || source.size() != grid_size)
    {
        throw DimensionError("coefficient and source length must equal grid_size");
    }
    for (double c : true_coefficient.entries())
    {
        if (c < 0.0)
        {
            throw InvalidArgument("true_coefficient entries must be >= 0");
        }
    }
    require_radius(radius);

    auto apply = [source](const Vector& c) { return solve_ode_system(c, source); };
    // F'(c) h = -A(c)^{-1} (u o h); A is symmetric, so F'(c)^* w = -u o A(c)^{-1} w.
    auto jacobian = [source](const Vector& c, const Vector& h)
    {
        const Vector u = solve_ode_system(c, source);
        return -solve_ode_system(c, hadamard(u, h));
    };
    auto adjoint = [source](const Vector& c, const Vector& w)
    {
        const Vector u = solve_ode_system(c, source);
        return -hadamard(u, solve_ode_system(c, w));
    };

    const BallSpec ball(true_coefficient, radius);
    OperatorModel op(apply, jacobian, adjoint, apply(true_coefficient), ball);

    const double unscaled = least_squares_lipschitz(op, op.data());
    const double step = resolve_step(step_scale, unscaled);
    LeastSquaresOptions ls;
    ls.unscaled_lipschitz = unscaled;
    FunctionalModel exact = least_squares_functional(op, op.data(), step, ls);

    std::vector<double> d(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i)
    {
        d[i] = std::sin(std::numbers::pi * static_cast<double>(i + 1)
                        / static_cast<double>(grid_size + 1));
    }
    return {"ode-param", std::move(op), std::move(exact), AnalyticFacts{},
            scaled_unit(Vector(std::move(d)), 0.25 * radius)};
}

const std::vector<std::string>& problem_names()
{
    static const std::vector<std::string> names{"quadratic", "scalar-quadratic",
                                                "autoconv", "ode-param"};
    return names;
}

}  // namespace illposed
