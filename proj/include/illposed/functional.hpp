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
#include <cstdint>
#include <functional>
#include <optional>

#include "illposed/linalg.hpp"

namespace illposed
{

inline constexpr std::uint64_t kDefaultSamplerSeed = 0x1ee7c0deULL;

// A nonnegative differentiable functional J on a ball together with a
// declared Lipschitz constant of its gradient. The stepsize of the gradient
// iteration is folded into J, so x_{k+1} = x_k - gradient(x_k).
//
// Evaluations are pure; a model may be shared between threads.
class FunctionalModel
{
public:
    using ValueFn = std::function<double(const Vector&)>;
    using GradientFn = std::function<Vector(const Vector&)>;

    FunctionalModel(ValueFn value, GradientFn gradient, double lipschitz,
                    BallSpec domain, double step_scale = 1.0);

    double value(const Vector& x) const;
    Vector gradient(const Vector& x) const;

    double lipschitz() const { return lipschitz_; }
    const BallSpec& domain() const { return domain_; }
    const Vector& minimizer() const { return domain_.center(); }
    /// Stepsize encoded into J (1 for functionals not built from an operator).
    double step_scale() const { return step_scale_; }

    FunctionalModel with_lipschitz(double lipschitz) const;

private:
    ValueFn value_;
    GradientFn gradient_;
    double lipschitz_;
    BallSpec domain_;
    double step_scale_;
};

// Nonlinear forward operator F with its Jacobian action, the adjoint action
// and the exact data y = F(x*), where x* is the center of the domain.
class OperatorModel
{
public:
    using ApplyFn = std::function<Vector(const Vector&)>;
    /// (x, h) -> F'(x) h  or  (x, w) -> F'(x)^* w
    using LinearizedFn = std::function<Vector(const Vector&, const Vector&)>;

    OperatorModel(ApplyFn apply, LinearizedFn jacobian, LinearizedFn adjoint,
                  Vector data, BallSpec domain);

    Vector apply(const Vector& x) const;
    Vector jacobian_apply(const Vector& x, const Vector& h) const;
    Vector jacobian_adjoint_apply(const Vector& x, const Vector& w) const;

    const Vector& data() const { return data_; }
    const BallSpec& domain() const { return domain_; }
    std::size_t input_dimension() const { return domain_.dimension(); }
    std::size_t output_dimension() const { return data_.size(); }

private:
    ApplyFn apply_;
    LinearizedFn jacobian_;
    LinearizedFn adjoint_;
    Vector data_;
    BallSpec domain_;
};

/// Linear growth bound phi(s) = coefficient * s for |grad J^delta|^2.
struct PhiBound
{
    double coefficient = 0.0;

    double operator()(double s) const { return coefficient * s; }
};

// J^delta together with its noise metadata:
//   |grad J^delta - grad J| <= delta,  |J^delta - J| <= psi_delta
// on the ball, and the Lipschitz constant of grad J^delta.
struct NoisyFunctional
{
    FunctionalModel model;
    double delta = 0.0;
    double psi_delta = 0.0;
    double lipschitz_noisy = 0.0;

    double data_noise_level = 0.0;
    std::uint64_t seed = 0;
    std::optional<Vector> observed;
    /// Inflated sampled suprema of |F'(x)| and |F(x) - y| over the ball.
    double jacobian_sup = 0.0;
    double residual_sup = 0.0;
};

struct LeastSquaresOptions
{
    /// Lipschitz constant of the unscaled gradient, when known analytically.
    std::optional<double> unscaled_lipschitz;
    std::size_t lipschitz_samples = 1000;
    std::uint64_t seed = kDefaultSamplerSeed;
};

/// J(x) = step_scale * 1/2 |F(x) - observed|^2.
FunctionalModel least_squares_functional(const OperatorModel& op,
                                         const Vector& observed,
                                         double step_scale,
                                         const LeastSquaresOptions& options = {});

/// Lipschitz constant of the unscaled least-squares gradient
/// F'(x)^*(F(x) - observed), from sampling unless known.
double least_squares_lipschitz(const OperatorModel& op, const Vector& observed,
                               const LeastSquaresOptions& options = {});

struct NoiseOptions
{
    std::size_t sup_samples = 1000;
    double safety_factor = 1.05;
    std::uint64_t sup_seed = kDefaultSamplerSeed;
};

// Perturbs the exact data along a seed-determined unit direction,
//   y^delta = y + data_noise_level * e,
// and builds J^delta against y^delta with the step scale of `exact`.
NoisyFunctional make_noisy(const OperatorModel& op,
                           const FunctionalModel& exact,
                           double data_noise_level, std::uint64_t seed,
                           const NoiseOptions& options = {});

/// J^delta = J with delta = psi = 0; the degenerate noise case.
NoisyFunctional noiseless(const FunctionalModel& exact);

/// phi coefficient 2 * step_scale * jacobian_sup^2 valid for least squares.
PhiBound least_squares_phi(const NoisyFunctional& noisy);

// Largest coordinate deviation between the analytic gradient and central
// finite differences of width h, relative to the infinity norm of the
// larger of the two gradient vectors. Returns 0 when both vanish.
// Refuses points closer than h to the boundary of the domain.
double gradient_check(const FunctionalModel& model, const Vector& x, double h);

/// |<F'(x)h, w> - <h, F'(x)^* w>| / (|F'(x)h| |w| + |h| |F'(x)^* w|)
double adjoint_consistency_error(const OperatorModel& op, const Vector& x,
                                 const Vector& h, const Vector& w);

}  // namespace illposed
