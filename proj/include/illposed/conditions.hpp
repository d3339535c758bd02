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

// Sampling estimators for the nonlinearity conditions of a functional or
// forward operator on a ball.
//
// Every estimator reports the extreme of a ratio over a finite,
// seed-determined sample set. Such a value can falsify a condition (a
// violating pair is a witness) but is only evidence for it: the supremum
// over the continuum may be larger. Estimates are therefore lower bounds
// of the smallest admissible constant.
//
// Sample sets are evaluated serially in index order so that results do
// not depend on scheduling.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "illposed/functional.hpp"
#include "illposed/linalg.hpp"

namespace illposed
{

// Premise parameter of the angle condition N(gamma, beta):
//   J(x1) <= gamma J(x2)  =>  <grad J(x2), x2 - x1> >= -beta |grad J(x2)|^2.
// Infinity is a distinguished state (premise always true), not a float.
class Gamma
{
public:
    static Gamma finite(double value);
    static Gamma infinite() { return Gamma(); }

    bool is_infinite() const { return infinite_; }
    /// Throws InvalidArgument for the infinite marker.
    double value() const;
    bool admits(double j1, double j2) const
    {
        return infinite_ || j1 <= value_ * j2;
    }
    std::string to_string() const;

private:
    Gamma() = default;

    bool infinite_ = true;
    double value_ = 0.0;
};

struct Witness
{
    std::string condition;
    std::vector<Vector> points;
    double measured = 0.0;
    double threshold = 0.0;
};

// Extremal ratio over a sample set. An empty value means no sample was
// admissible (inconclusive).
struct Estimate
{
    std::optional<double> value;
    std::size_t evaluated = 0;
    std::size_t admissible = 0;
    std::vector<Vector> extremal;
    std::vector<Witness> witnesses;

    bool conclusive() const { return value.has_value(); }
};

struct CheckOutcome
{
    bool passed = true;
    std::size_t checked = 0;
    std::vector<Witness> witnesses;
};

inline constexpr double kDefaultResidualFloor = 1e-12;
inline constexpr std::size_t kMaxWitnesses = 10;

/// Max of |grad J(x1) - grad J(x2)| / |x1 - x2| over random pairs,
/// short pairs (|x1 - x2| = 1e-3 rho) and a power iteration on
/// finite-difference Hessian actions at the steepest sampled points.
double estimate_lipschitz(const FunctionalModel& model, const BallSpec& ball,
                          std::size_t samples, std::uint64_t seed);

/// 1e-8 (1 + L rho)
double default_grad_floor(double lipschitz_hat, double radius);

/// Smallest beta for which N(gamma, beta) is consistent with the sample.
/// Pairs with |grad J(x2)| below grad_floor do not enter the ratio; they are
/// checked against the final value and reported as witnesses if violated.
/// The center partner x1 = x* is refined by stepping along gradient
/// directions at fixed distance from x*, a power iteration near x*.
Estimate estimate_beta(const FunctionalModel& model, const BallSpec& ball,
                       Gamma gamma, std::size_t samples, double grad_floor,
                       std::uint64_t seed);

/// max <F(x)-F(x*)-F'(x)(x-x*), F(x)-F(x*)> / |F(x)-F(x*)|^2, clamped at 0.
Estimate estimate_eta_weak(const OperatorModel& op, const BallSpec& ball,
                           std::size_t samples, double residual_floor,
                           std::uint64_t seed);

/// max |F(x)-F(z)-F'(x)(x-z)| / |F(x)-F(z)| over sampled pairs.
Estimate estimate_eta_strong(const OperatorModel& op, const BallSpec& ball,
                             std::size_t samples, double residual_floor,
                             std::uint64_t seed);

/// Verifies the two-sided bound
///   |F'(x)(z-x)| / (1+eta) <= |F(z)-F(x)| <= |F'(x)(z-x)| / (1-eta)
/// and the expanded strong cone inequality
///   <F'(x)(x-z), F(x)-F(z)> >= (1-eta^2)/2 |F(x)-F(z)|^2 + 1/2 |F'(x)(x-z)|^2
/// on the pair set of estimate_eta_strong(samples, seed).
CheckOutcome check_cone_implications(double eta, const OperatorModel& op,
                                     const BallSpec& ball, std::size_t samples,
                                     std::uint64_t seed,
                                     double residual_floor = kDefaultResidualFloor);

/// Minimum over sampled z (inner_radius <= |z| <= radius) of the largest
/// tau in (0, 1] with J(x* - tau z) <= gamma J(x* + z), found by bisection.
/// A sample admitting no tau yields 0 and a witness.
Estimate estimate_tau_balancing(const FunctionalModel& model,
                                const BallSpec& ball, double gamma,
                                std::size_t samples, std::uint64_t seed);

/// Checks that t -> t^(-2(1-eta)) J_LS(x* + t(x - x*)) is nondecreasing on
/// the grid t = 1/grid, ..., 1 for sampled x, with J_LS = 1/2|F - F(x*)|^2.
CheckOutcome check_radial_monotonicity(const OperatorModel& op,
                                       const BallSpec& ball, double eta,
                                       std::size_t samples, std::size_t grid,
                                       std::uint64_t seed);

struct ConeDerivedPair
{
    double gamma = 0.0;
    double beta = 0.0;
    /// Supremum of admissible gamma; gamma is chosen at 90% of it.
    double gamma_sup = 0.0;
};

/// (gamma, beta) for which the strong cone condition with eta implies
/// N(gamma, beta) for the least-squares functional with
/// jac_sup = sup |F'(x)^*| over the ball.
ConeDerivedPair derive_ncgb_from_cone(double eta, double jac_sup);

/// tau = (1 - eta) gamma / (1 + eta): balancing constant implied by the
/// strong cone condition.
double balancing_tau_from_cone(double eta, double gamma);

/// coefficient = 1.05 * max |grad J^delta(x)|^2 / J^delta(x); samples with
/// J^delta(x) < 1e-14 are excluded. Empty when every sample is excluded.
std::optional<PhiBound> calibrate_phi(const NoisyFunctional& noisy,
                                      const BallSpec& ball, std::size_t samples,
                                      std::uint64_t seed);

/// |F'(x)| by power iteration on F'(x)^* F'(x).
double jacobian_norm(const OperatorModel& op, const Vector& x,
                     std::size_t iterations = 60);

/// Sampled max of |F'(x)| over the ball (center included).
double estimate_jacobian_sup(const OperatorModel& op, const BallSpec& ball,
                             std::size_t samples, std::uint64_t seed);

/// Sampled max of |F(x) - y| over the ball.
double estimate_residual_sup(const OperatorModel& op, const BallSpec& ball,
                             std::size_t samples, std::uint64_t seed);

struct BalanceRatioPoint
{
    std::size_t ray = 0;
    double scale = 0.0;
    /// J(x* + scale d) / J(x* - scale d); empty when the denominator vanishes.
    std::optional<double> ratio;
};

/// Diagnostic profile of J(x* + D)/J(x* - D) along sampled rays at shrinking
/// scales rho * 2^-j. Not a pass/fail test.
std::vector<BalanceRatioPoint> balance_ratio_profile(const FunctionalModel& model,
                                                     const BallSpec& ball,
                                                     std::size_t rays,
                                                     std::size_t scales,
                                                     std::uint64_t seed);

struct DiagnoseOptions
{
    std::size_t samples = 1000;
    std::uint64_t seed = kDefaultSamplerSeed;
    Gamma gamma = Gamma::finite(0.0);
    double tau_gamma = 0.25;
    /// Inner radius for the balancing sampler as a fraction of rho.
    double inner_radius_fraction = 0.5;
    std::size_t radial_grid = 16;
};

struct ConditionReport
{
    Gamma gamma = Gamma::finite(0.0);
    std::optional<double> beta_hat;
    double eta_weak_hat = 0.0;
    double eta_strong_hat = 0.0;
    double tau_gamma = 0.0;
    double tau_hat = 0.0;
    double lipschitz_hat = 0.0;
    double declared_lipschitz = 0.0;
    double phi_coefficient_hat = 0.0;
    double jacobian_sup_hat = 0.0;
    std::size_t samples = 0;
    bool radial_monotonicity_passed = true;
    bool cone_implications_passed = true;
    std::optional<ConeDerivedPair> cone_pair;
    std::optional<double> tau_lower_bound_from_cone;
    std::vector<BalanceRatioPoint> balance_profile;
    /// Per constant: "lower-bound estimate", "falsified" or "inconclusive".
    std::vector<std::pair<std::string, std::string>> labels;
    std::vector<Witness> witnesses;
};

/// Runs every estimator on one operator / functional pair.
ConditionReport diagnose_conditions(const OperatorModel& op,
                                    const FunctionalModel& model,
                                    const DiagnoseOptions& options);

}  // namespace illposed
