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

#include "illposed/functional.hpp"

#include <algorithm>
#include <cmath>

#include "illposed/conditions.hpp"
#include "illposed/errors.hpp"
#include "illposed/random.hpp"

namespace illposed
{

FunctionalModel::FunctionalModel(ValueFn value, GradientFn gradient,
                                 double lipschitz, BallSpec domain,
                                 double step_scale)
    : value_(std::move(value)),
      gradient_(std::move(gradient)),
      lipschitz_(lipschitz),
      domain_(std::move(domain)),
      step_scale_(step_scale)
{
    if (!value_ || !gradient_)
    {
        throw InvalidArgument("functional needs a value and a gradient map");
    }
    if (!(lipschitz >= 0.0) || !std::isfinite(lipschitz))
    {
        throw InvalidArgument("Lipschitz constant must be finite and >= 0");
    }
    if (!(step_scale > 0.0))
    {
        throw InvalidArgument("step scale must be positive");
    }
}

double FunctionalModel::value(const Vector& x) const
{
    require_same_size(x, domain_.center());
    const double v = value_(x);
    if (!std::isfinite(v))
    {
        throw NumericalError("functional value is not finite");
    }
    return v;
}

Vector FunctionalModel::gradient(const Vector& x) const
{
    require_same_size(x, domain_.center());
    Vector g = gradient_(x);
    require_same_size(g, x);
    return g;
}

FunctionalModel FunctionalModel::with_lipschitz(double lipschitz) const
{
    return FunctionalModel(value_, gradient_, lipschitz, domain_, step_scale_);
}

OperatorModel::OperatorModel(ApplyFn apply, LinearizedFn jacobian,
                             LinearizedFn adjoint, Vector data,
                             BallSpec domain)
    : apply_(std::move(apply)),
      jacobian_(std::move(jacobian)),
      adjoint_(std::move(adjoint)),
      data_(std::move(data)),
      domain_(std::move(domain))
{
    if (!apply_ || !jacobian_ || !adjoint_)
    {
        throw InvalidArgument("operator needs apply, Jacobian and adjoint maps");
    }
}

Vector OperatorModel::apply(const Vector& x) const
{
    require_same_size(x, domain_.center());
    return apply_(x);
}

Vector OperatorModel::jacobian_apply(const Vector& x, const Vector& h) const
{
    require_same_size(x, domain_.center());
    require_same_size(h, domain_.center());
    return jacobian_(x, h);
}

Vector OperatorModel::jacobian_adjoint_apply(const Vector& x,
                                             const Vector& w) const
{
    require_same_size(x, domain_.center());
    require_same_size(w, data_);
    return adjoint_(x, w);
}

namespace
{

FunctionalModel make_least_squares(const OperatorModel& op, Vector observed,
                                   double step_scale, double lipschitz)
{
    auto value = [op, observed, step_scale](const Vector& x)
    {
        return step_scale * 0.5 * squared_norm(op.apply(x) - observed);
    };
    auto gradient = [op, observed, step_scale](const Vector& x)
    {
        return step_scale
               * op.jacobian_adjoint_apply(x, op.apply(x) - observed);
    };
    return FunctionalModel(std::move(value), std::move(gradient), lipschitz,
                           op.domain(), step_scale);
}

}  // namespace

double least_squares_lipschitz(const OperatorModel& op, const Vector& observed,
                               const LeastSquaresOptions& options)
{
    require_same_size(observed, op.data());
    if (options.unscaled_lipschitz)
    {
        return *options.unscaled_lipschitz;
    }
    const FunctionalModel unscaled = make_least_squares(op, observed, 1.0, 0.0);
    return estimate_lipschitz(unscaled, op.domain(), options.lipschitz_samples,
                              options.seed);
}

FunctionalModel least_squares_functional(const OperatorModel& op,
                                         const Vector& observed,
                                         double step_scale,
                                         const LeastSquaresOptions& options)
{
    require_same_size(observed, op.data());
    if (!(step_scale > 0.0) || !std::isfinite(step_scale))
    {
        throw InvalidArgument("step_scale must be positive");
    }
    const double unscaled = least_squares_lipschitz(op, observed, options);
    return make_least_squares(op, observed, step_scale, step_scale * unscaled);
}

NoisyFunctional make_noisy(const OperatorModel& op,
                           const FunctionalModel& exact,
                           double data_noise_level, std::uint64_t seed,
                           const NoiseOptions& options)
{
    if (!(data_noise_level > 0.0) || !std::isfinite(data_noise_level))
    {
        throw InvalidArgument("data_noise_level must be positive");
    }
    SplitMix64 rng(seed);
    const Vector direction = random_direction(rng, op.output_dimension());
    Vector observed = op.data();
    observed.axpy(data_noise_level, direction);

    const BallSpec& ball = op.domain();
    const double jac_sup =
        options.safety_factor
        * estimate_jacobian_sup(op, ball, options.sup_samples, options.sup_seed);
    const double res_sup =
        options.safety_factor
        * estimate_residual_sup(op, ball, options.sup_samples, options.sup_seed);

    const double s = exact.step_scale();
    const double delta = s * jac_sup * data_noise_level;
    const double psi =
        s * (res_sup * data_noise_level + 0.5 * data_noise_level * data_noise_level);

    LeastSquaresOptions ls;
    ls.lipschitz_samples = options.sup_samples;
    ls.seed = options.sup_seed;
    const double sampled = s * least_squares_lipschitz(op, observed, ls);
    // Never report more than the a-priori bound L + delta.
    const double lipschitz_noisy =
        std::min(exact.lipschitz() + delta, std::max(exact.lipschitz(), sampled));

    NoisyFunctional noisy{
        make_least_squares(op, observed, s, lipschitz_noisy),
        delta,
        psi,
        lipschitz_noisy,
        data_noise_level,
        seed,
        observed,
        jac_sup,
        res_sup,
    };
    return noisy;
}

NoisyFunctional noiseless(const FunctionalModel& exact)
{
    return NoisyFunctional{exact, 0.0, 0.0, exact.lipschitz(), 0.0, 0,
                           std::nullopt, 0.0, 0.0};
}

PhiBound least_squares_phi(const NoisyFunctional& noisy)
{
    const double s = noisy.model.step_scale();
    return PhiBound{2.0 * s * noisy.jacobian_sup * noisy.jacobian_sup};
}

double gradient_check(const FunctionalModel& model, const Vector& x, double h)
{
    if (!(h > 0.0))
    {
        throw InvalidArgument("finite-difference width must be positive");
    }
    const BallSpec& ball = model.domain();
    if (distance(x, ball.center()) + h > ball.radius())
    {
        throw Refusal("gradient check point is within h of the ball boundary");
    }
    const Vector analytic = model.gradient(x);
    std::vector<double> fd(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        Vector plus = x;
        Vector minus = x;
        plus.set(i, x[i] + h);
        minus.set(i, x[i] - h);
        fd[i] = (model.value(plus) - model.value(minus)) / (2.0 * h);
    }
    double scale = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        scale = std::max({scale, std::abs(analytic[i]), std::abs(fd[i])});
        worst = std::max(worst, std::abs(analytic[i] - fd[i]));
    }
    return scale > 0.0 ? worst / scale : 0.0;
}

double adjoint_consistency_error(const OperatorModel& op, const Vector& x,
                                 const Vector& h, const Vector& w)
{
    const Vector jh = op.jacobian_apply(x, h);
    const Vector jtw = op.jacobian_adjoint_apply(x, w);
    const double scale = norm(jh) * norm(w) + norm(h) * norm(jtw);
    if (scale == 0.0)
    {
        return 0.0;
    }
    return std::abs(inner(jh, w) - inner(h, jtw)) / scale;
}

}  // namespace illposed
