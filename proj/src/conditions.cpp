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

#include "illposed/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "illposed/errors.hpp"
#include "illposed/random.hpp"

namespace illposed
{

namespace
{

// Stream labels for derive_seed, one per independent random decision.
constexpr std::uint64_t kPartnerStream = 1;
constexpr std::uint64_t kShortPairStream = 2;
constexpr std::uint64_t kPowerStartStream = 3;
constexpr std::uint64_t kRayStream = 4;

constexpr std::size_t kBetaPartners = 16;
constexpr std::size_t kBetaRefineSteps = 60;
constexpr std::size_t kPowerPoints = 8;
constexpr std::size_t kPowerSteps = 25;

void add_witness(std::vector<Witness>& out, Witness w)
{
    if (out.size() < kMaxWitnesses)
    {
        out.push_back(std::move(w));
    }
}

double relative_slack(double a, double b, double rel)
{
    return rel * std::max(std::abs(a), std::abs(b));
}

// Pair set shared by estimate_eta_strong and check_cone_implications:
// random pairs, pairs with x*, mirrored pairs through x*.
std::vector<std::pair<Vector, Vector>> strong_cone_pairs(const BallSpec& ball,
                                                         std::size_t samples,
                                                         std::uint64_t seed)
{
    const auto points = sample_ball(ball, samples, seed);
    SplitMix64 rng(derive_seed(seed, kPartnerStream));
    std::vector<std::pair<Vector, Vector>> pairs;
    pairs.reserve(points.size());
    const Vector& c = ball.center();
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        const Vector& x = points[i];
        switch (i % 4)
        {
            case 1:
                pairs.emplace_back(x, c);
                break;
            case 2:
                pairs.emplace_back(x, 2.0 * c - x);
                break;
            case 3:
                pairs.emplace_back(c, x);
                break;
            default:
                pairs.emplace_back(x, points[rng.index(points.size())]);
                break;
        }
    }
    return pairs;
}

}  // namespace

Gamma Gamma::finite(double value)
{
    if (!(value >= 0.0) || !std::isfinite(value))
    {
        throw InvalidArgument("gamma must be a finite nonnegative number");
    }
    Gamma g;
    g.infinite_ = false;
    g.value_ = value;
    return g;
}

double Gamma::value() const
{
    if (infinite_)
    {
        throw InvalidArgument("gamma is the infinity marker");
    }
    return value_;
}

std::string Gamma::to_string() const
{
    if (infinite_)
    {
        return "inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value_);
    return buf;
}

double estimate_lipschitz(const FunctionalModel& model, const BallSpec& ball,
                          std::size_t samples, std::uint64_t seed)
{
    if (samples < 2)
    {
        throw InvalidArgument("Lipschitz estimation needs at least 2 samples");
    }
    const auto points = sample_ball(ball, samples, seed);
    std::vector<Vector> grads;
    grads.reserve(points.size());
    for (const Vector& p : points)
    {
        grads.push_back(model.gradient(p));
    }

    double best = 0.0;
    auto ratio = [](const Vector& g1, const Vector& g2, const Vector& x1,
                    const Vector& x2)
    {
        const double dx = distance(x1, x2);
        return dx > 0.0 ? distance(g1, g2) / dx : 0.0;
    };

    for (std::size_t i = 0; i < points.size(); ++i)
    {
        const std::size_t j = (i + 1) % points.size();
        best = std::max(best, ratio(grads[i], grads[j], points[i], points[j]));
    }

    // Short pairs probe the local constant; bases are pulled inside
    // radius - eps so that the partner stays in the ball.
    const double eps = 1e-3 * ball.radius();
    const double inner = ball.radius() - eps;
    SplitMix64 rng(derive_seed(seed, kShortPairStream));
    std::vector<std::pair<double, std::size_t>> local;
    std::vector<Vector> bases;
    std::vector<Vector> base_grads;
    local.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        Vector base = points[i];
        const double r = distance(base, ball.center());
        if (r > inner)
        {
            base = ball.center() + (base - ball.center()) * (inner / r);
        }
        const Vector d = random_direction(rng, ball.dimension());
        Vector q = base;
        q.axpy(eps, d);
        const Vector gb = model.gradient(base);
        const double value = ratio(model.gradient(q), gb, q, base);
        best = std::max(best, value);
        local.emplace_back(value, i);
        bases.push_back(std::move(base));
        base_grads.push_back(gb);
    }

    // Power iteration on finite-difference Hessian actions at the points
    // with the steepest local ratio.
    std::stable_sort(local.begin(), local.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    SplitMix64 start_rng(derive_seed(seed, kPowerStartStream));
    const std::size_t refine = std::min(kPowerPoints, local.size());
    for (std::size_t t = 0; t < refine; ++t)
    {
        const std::size_t i = local[t].second;
        Vector d = random_direction(start_rng, ball.dimension());
        for (std::size_t step = 0; step < kPowerSteps; ++step)
        {
            Vector q = bases[i];
            q.axpy(eps, d);
            Vector diff = model.gradient(q) - base_grads[i];
            const double dx = distance(q, bases[i]);
            const double len = norm(diff);
            if (dx == 0.0 || len == 0.0)
            {
                break;
            }
            best = std::max(best, len / dx);
            d = diff * (1.0 / len);
        }
    }
    return best;
}

double default_grad_floor(double lipschitz_hat, double radius)
{
    return 1e-8 * (1.0 + lipschitz_hat * radius);
}

Estimate estimate_beta(const FunctionalModel& model, const BallSpec& ball,
                       Gamma gamma, std::size_t samples, double grad_floor,
                       std::uint64_t seed)
{
    if (samples < 1)
    {
        throw InvalidArgument("beta estimation needs at least 1 sample");
    }
    if (!(grad_floor > 0.0))
    {
        throw InvalidArgument("grad_floor must be positive");
    }
    const auto points = sample_ball(ball, samples, seed);
    std::vector<double> values;
    std::vector<Vector> grads;
    values.reserve(points.size());
    grads.reserve(points.size());
    for (const Vector& p : points)
    {
        values.push_back(model.value(p));
        grads.push_back(model.gradient(p));
    }

    // The partner set does not depend on gamma, so admissible pairs are
    // nested in gamma and the estimate is monotone in it.
    SplitMix64 rng(derive_seed(seed, kPartnerStream));
    const std::size_t partners =
        points.size() > 1 ? std::min(kBetaPartners, points.size() - 1) : 0;

    Estimate est;
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_x1 = 0;
    std::size_t best_x2 = 0;
    constexpr std::size_t kCenter = std::numeric_limits<std::size_t>::max();

    struct SubFloor
    {
        std::size_t x1;
        std::size_t x2;
        double slope;
    };
    std::vector<SubFloor> sub_floor;

    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        candidates.clear();
        candidates.push_back(kCenter);
        candidates.push_back(i);
        for (std::size_t m = 0; m < partners; ++m)
        {
            candidates.push_back(rng.index(points.size()));
        }
        const Vector& x2 = points[i];
        const Vector& g2 = grads[i];
        const double g2_sq = squared_norm(g2);
        const double g2_norm = std::sqrt(g2_sq);
        for (std::size_t c : candidates)
        {
            // J(x*) = 0 by assumption.
            const double j1 = (c == kCenter) ? 0.0 : values[c];
            const Vector& x1 = (c == kCenter) ? ball.center() : points[c];
            ++est.evaluated;
            if (!gamma.admits(j1, values[i]))
            {
                continue;
            }
            const double slope = inner(g2, x2) - inner(g2, x1);
            if (g2_norm < grad_floor)
            {
                sub_floor.push_back({c, i, slope});
                continue;
            }
            ++est.admissible;
            const double r = -slope / g2_sq;
            if (r > best)
            {
                best = r;
                best_x1 = c;
                best_x2 = i;
            }
        }
    }
    if (est.admissible == 0)
    {
        return est;
    }
    est.value = best;
    est.extremal = {best_x1 == kCenter ? ball.center() : points[best_x1],
                    points[best_x2]};

    // Refinement with the center partner, which every gamma admits: from the
    // best such sample, step to x* + |x - x*| grad J(x)/|grad J(x)| and keep
    // the largest ratio seen. Near x* this is a power iteration on the
    // Hessian, whose top eigenvector carries the extremal ratio.
    std::optional<std::size_t> start;
    double start_ratio = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        const double g_sq = squared_norm(grads[i]);
        if (std::sqrt(g_sq) < grad_floor || !gamma.admits(0.0, values[i]))
        {
            continue;
        }
        const double r = -inner(grads[i], points[i] - ball.center()) / g_sq;
        if (r > start_ratio)
        {
            start_ratio = r;
            start = i;
        }
    }
    if (start)
    {
        Vector x = points[*start];
        Vector g = grads[*start];
        const double radius = distance(x, ball.center());
        for (std::size_t step = 0; step < kBetaRefineSteps && radius > 0.0; ++step)
        {
            x = ball.center() + g * (radius / norm(g));
            g = model.gradient(x);
            const double g_sq = squared_norm(g);
            ++est.evaluated;
            if (std::sqrt(g_sq) < grad_floor || !gamma.admits(0.0, model.value(x)))
            {
                break;
            }
            ++est.admissible;
            const double r = -inner(g, x - ball.center()) / g_sq;
            if (r > *est.value)
            {
                est.value = r;
                est.extremal = {ball.center(), x};
            }
        }
    }
    best = *est.value;
    const double certified = -std::abs(best) * grad_floor * grad_floor;
    for (const SubFloor& s : sub_floor)
    {
        if (s.slope < certified)
        {
            add_witness(est.witnesses,
                        {"N(gamma,beta) below gradient floor",
                         {s.x1 == kCenter ? ball.center() : points[s.x1],
                          points[s.x2]},
                         s.slope,
                         certified});
        }
    }
    return est;
}

Estimate estimate_eta_weak(const OperatorModel& op, const BallSpec& ball,
                           std::size_t samples, double residual_floor,
                           std::uint64_t seed)
{
    if (samples < 1)
    {
        throw InvalidArgument("eta estimation needs at least 1 sample");
    }
    const auto points = sample_ball(ball, samples, seed);
    const Vector f_star = op.apply(ball.center());
    Estimate est;
    double best = -std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        const Vector& x = points[i];
        ++est.evaluated;
        const Vector r = op.apply(x) - f_star;
        const double r_sq = squared_norm(r);
        if (std::sqrt(r_sq) < residual_floor)
        {
            continue;
        }
        ++est.admissible;
        const Vector remainder = r - op.jacobian_apply(x, x - ball.center());
        const double ratio = inner(remainder, r) / r_sq;
        if (ratio > best)
        {
            best = ratio;
            arg = i;
        }
    }
    if (est.admissible == 0)
    {
        return est;
    }
    est.value = std::max(0.0, best);
    est.extremal = {points[arg]};
    return est;
}

Estimate estimate_eta_strong(const OperatorModel& op, const BallSpec& ball,
                             std::size_t samples, double residual_floor,
                             std::uint64_t seed)
{
    if (samples < 1)
    {
        throw InvalidArgument("eta estimation needs at least 1 sample");
    }
    const auto pairs = strong_cone_pairs(ball, samples, seed);
    Estimate est;
    double best = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i)
    {
        const auto& [x, z] = pairs[i];
        ++est.evaluated;
        const Vector df = op.apply(x) - op.apply(z);
        const double df_norm = norm(df);
        if (df_norm < residual_floor)
        {
            continue;
        }
        const Vector remainder = df - op.jacobian_apply(x, x - z);
        const double ratio = norm(remainder) / df_norm;
        if (est.admissible == 0 || ratio > best)
        {
            best = ratio;
            arg = i;
        }
        ++est.admissible;
    }
    if (est.admissible == 0)
    {
        return est;
    }
    est.value = best;
    est.extremal = {pairs[arg].first, pairs[arg].second};
    return est;
}

CheckOutcome check_cone_implications(double eta, const OperatorModel& op,
                                     const BallSpec& ball, std::size_t samples,
                                     std::uint64_t seed, double residual_floor)
{
    if (!(eta >= 0.0) || !(eta < 1.0))
    {
        throw InvalidArgument("cone implications need 0 <= eta < 1");
    }
    constexpr double kRel = 1e-9;
    CheckOutcome out;
    for (const auto& [x, z] : strong_cone_pairs(ball, samples, seed))
    {
        const Vector df = op.apply(x) - op.apply(z);
        const double df_norm = norm(df);
        if (df_norm < residual_floor)
        {
            continue;
        }
        ++out.checked;
        const Vector lin = op.jacobian_apply(x, x - z);
        const double lin_norm = norm(lin);

        const double lower = lin_norm / (1.0 + eta);
        const double upper = lin_norm / (1.0 - eta);
        if (lower > df_norm + relative_slack(lower, df_norm, kRel))
        {
            out.passed = false;
            add_witness(out.witnesses,
                        {"cone lower bound", {x, z}, df_norm, lower});
        }
        if (df_norm > upper + relative_slack(upper, df_norm, kRel))
        {
            out.passed = false;
            add_witness(out.witnesses,
                        {"cone upper bound", {x, z}, df_norm, upper});
        }

        const double lhs = inner(lin, df);
        const double rhs = 0.5 * (1.0 - eta * eta) * df_norm * df_norm
                           + 0.5 * lin_norm * lin_norm;
        if (lhs < rhs - relative_slack(lhs, rhs, kRel))
        {
            out.passed = false;
            add_witness(out.witnesses,
                        {"expanded strong cone inequality", {x, z}, lhs, rhs});
        }
    }
    return out;
}

Estimate estimate_tau_balancing(const FunctionalModel& model,
                                const BallSpec& ball, double gamma,
                                std::size_t samples, std::uint64_t seed)
{
    if (!(gamma > 0.0))
    {
        throw InvalidArgument("balancing needs gamma > 0");
    }
    if (!(ball.inner_radius() > 0.0))
    {
        throw InvalidArgument("balancing needs a positive inner radius");
    }
    constexpr int kBisections = 60;
    constexpr double kNone = 1e-12;
    const Vector& c = ball.center();
    Estimate est;
    double worst = 1.0;
    for (const Vector& z : sample_annulus(ball, samples, seed))
    {
        ++est.evaluated;
        const double target = gamma * model.value(c + z);
        auto feasible = [&](double tau)
        { return model.value(c - tau * z) <= target; };

        double tau = 1.0;
        if (!feasible(1.0))
        {
            double lo = 0.0;
            double hi = 1.0;
            for (int it = 0; it < kBisections; ++it)
            {
                const double mid = 0.5 * (lo + hi);
                (feasible(mid) ? lo : hi) = mid;
            }
            tau = lo;
        }
        if (tau < kNone)
        {
            tau = 0.0;
            add_witness(est.witnesses,
                        {"balancing", {c + z, c - z}, model.value(c - 1e-6 * z),
                         target});
        }
        ++est.admissible;
        if (est.admissible == 1 || tau < worst)
        {
            worst = tau;
            est.extremal = {c + z};
        }
    }
    if (est.admissible > 0)
    {
        est.value = worst;
    }
    return est;
}

CheckOutcome check_radial_monotonicity(const OperatorModel& op,
                                       const BallSpec& ball, double eta,
                                       std::size_t samples, std::size_t grid,
                                       std::uint64_t seed)
{
    if (grid < 3)
    {
        throw InvalidArgument("radial monotonicity needs grid >= 3");
    }
    if (!(eta >= 0.0) || !(eta <= 1.0))
    {
        throw InvalidArgument("radial monotonicity needs eta in [0, 1]");
    }
    constexpr double kRel = 1e-10;
    const Vector& c = ball.center();
    const Vector f_star = op.apply(c);
    const double exponent = -2.0 * (1.0 - eta);
    CheckOutcome out;
    for (const Vector& x : sample_ball(ball, samples, seed))
    {
        const Vector d = x - c;
        if (norm(d) == 0.0)
        {
            continue;
        }
        ++out.checked;
        double previous = 0.0;
        for (std::size_t j = 1; j <= grid; ++j)
        {
            const double t = static_cast<double>(j) / static_cast<double>(grid);
            const Vector xt = c + t * d;
            const double j_ls = 0.5 * squared_norm(op.apply(xt) - f_star);
            const double v = std::pow(t, exponent) * j_ls;
            if (j > 1 && v < previous - relative_slack(v, previous, kRel))
            {
                out.passed = false;
                add_witness(out.witnesses,
                            {"radial monotonicity", {x, xt}, v, previous});
            }
            previous = v;
        }
    }
    return out;
}

ConeDerivedPair derive_ncgb_from_cone(double eta, double jac_sup)
{
    if (!(eta >= 0.0) || !(eta < 1.0))
    {
        throw InvalidArgument("derived (gamma, beta) needs 0 <= eta < 1");
    }
    if (!(jac_sup > 0.0))
    {
        throw InvalidArgument("derived (gamma, beta) needs sup |F'| > 0");
    }
    const double s = std::sqrt(1.0 - eta * eta);
    const double gamma_sup = (s / (1.0 + s)) * (s / (1.0 + s));
    const double gamma = 0.9 * gamma_sup;
    const double root = 1.0 - std::sqrt(gamma);
    const double beta = -((1.0 - eta * eta) * root * root - gamma)
                        / (2.0 * jac_sup * jac_sup);
    return {gamma, beta, gamma_sup};
}

double balancing_tau_from_cone(double eta, double gamma)
{
    return (1.0 - eta) * gamma / (1.0 + eta);
}

std::optional<PhiBound> calibrate_phi(const NoisyFunctional& noisy,
                                      const BallSpec& ball, std::size_t samples,
                                      std::uint64_t seed)
{
    if (samples < 1)
    {
        throw InvalidArgument("phi calibration needs at least 1 sample");
    }
    constexpr double kValueGuard = 1e-14;
    double best = 0.0;
    bool any = false;
    for (const Vector& x : sample_ball(ball, samples, seed))
    {
        const double j = noisy.model.value(x);
        if (j < kValueGuard)
        {
            continue;
        }
        any = true;
        best = std::max(best, squared_norm(noisy.model.gradient(x)) / j);
    }
    if (!any)
    {
        return std::nullopt;
    }
    return PhiBound{1.05 * best};
}

double jacobian_norm(const OperatorModel& op, const Vector& x,
                     std::size_t iterations)
{
    SplitMix64 rng(0x6a09e667f3bcc908ULL);
    Vector v = random_direction(rng, op.input_dimension());
    double best = 0.0;
    for (std::size_t it = 0; it < iterations; ++it)
    {
        const Vector jv = op.jacobian_apply(x, v);
        best = std::max(best, norm(jv));
        const Vector w = op.jacobian_adjoint_apply(x, jv);
        const double len = norm(w);
        if (len == 0.0)
        {
            break;
        }
        v = w * (1.0 / len);
    }
    return best;
}

double estimate_jacobian_sup(const OperatorModel& op, const BallSpec& ball,
                             std::size_t samples, std::uint64_t seed)
{
    double best = jacobian_norm(op, ball.center(), 60);
    for (const Vector& x : sample_ball(ball, samples, seed))
    {
        best = std::max(best, jacobian_norm(op, x, 30));
    }
    return best;
}

double estimate_residual_sup(const OperatorModel& op, const BallSpec& ball,
                             std::size_t samples, std::uint64_t seed)
{
    double best = 0.0;
    for (const Vector& x : sample_ball(ball, samples, seed))
    {
        best = std::max(best, norm(op.apply(x) - op.data()));
    }
    return best;
}

std::vector<BalanceRatioPoint> balance_ratio_profile(const FunctionalModel& model,
                                                     const BallSpec& ball,
                                                     std::size_t rays,
                                                     std::size_t scales,
                                                     std::uint64_t seed)
{
    SplitMix64 rng(derive_seed(seed, kRayStream));
    const Vector& c = ball.center();
    std::vector<BalanceRatioPoint> out;
    for (std::size_t r = 0; r < rays; ++r)
    {
        const Vector d = random_direction(rng, ball.dimension());
        double scale = ball.radius();
        for (std::size_t s = 0; s < scales; ++s, scale *= 0.5)
        {
            const double denom = model.value(c - scale * d);
            BalanceRatioPoint p{r, scale, std::nullopt};
            if (denom > 0.0)
            {
                p.ratio = model.value(c + scale * d) / denom;
            }
            out.push_back(p);
        }
    }
    return out;
}

ConditionReport diagnose_conditions(const OperatorModel& op,
                                    const FunctionalModel& model,
                                    const DiagnoseOptions& options)
{
    if (options.samples < 2)
    {
        throw InvalidArgument("condition diagnosis needs at least 2 samples");
    }
    const BallSpec& ball = model.domain();
    const std::size_t n = options.samples;
    const std::uint64_t seed = options.seed;
    constexpr const char* kLower = "lower-bound estimate";
    constexpr const char* kFalsified = "falsified";
    constexpr const char* kInconclusive = "inconclusive";

    ConditionReport report;
    report.samples = n;
    report.gamma = options.gamma;
    report.tau_gamma = options.tau_gamma;
    report.declared_lipschitz = model.lipschitz();

    report.lipschitz_hat = estimate_lipschitz(model, ball, n, seed);
    if (report.lipschitz_hat > model.lipschitz() * (1.0 + 1e-9))
    {
        report.labels.emplace_back("lipschitz", kFalsified);
        add_witness(report.witnesses,
                    {"declared Lipschitz constant", {}, report.lipschitz_hat,
                     model.lipschitz()});
    }
    else
    {
        report.labels.emplace_back("lipschitz", kLower);
    }

    const Estimate beta =
        estimate_beta(model, ball, options.gamma, n,
                      default_grad_floor(report.lipschitz_hat, ball.radius()),
                      seed);
    report.beta_hat = beta.value;
    report.labels.emplace_back("beta", beta.conclusive() ? kLower : kInconclusive);
    for (const Witness& w : beta.witnesses)
    {
        add_witness(report.witnesses, w);
    }

    const Estimate weak = estimate_eta_weak(op, ball, n, kDefaultResidualFloor, seed);
    report.eta_weak_hat = weak.value.value_or(0.0);
    if (!weak.conclusive())
    {
        report.labels.emplace_back("eta_weak", kInconclusive);
    }
    else if (report.eta_weak_hat >= 1.0)
    {
        report.labels.emplace_back("eta_weak", kFalsified);
        add_witness(report.witnesses,
                    {"weak tangential cone (eta < 1)", weak.extremal,
                     report.eta_weak_hat, 1.0});
    }
    else
    {
        report.labels.emplace_back("eta_weak", kLower);
    }

    const Estimate strong =
        estimate_eta_strong(op, ball, n, kDefaultResidualFloor, seed);
    report.eta_strong_hat = strong.value.value_or(0.0);
    report.jacobian_sup_hat = estimate_jacobian_sup(op, ball, n, seed);
    if (!strong.conclusive())
    {
        report.labels.emplace_back("eta_strong", kInconclusive);
    }
    else if (report.eta_strong_hat >= 1.0)
    {
        report.labels.emplace_back("eta_strong", kFalsified);
        add_witness(report.witnesses,
                    {"strong tangential cone (eta < 1)", strong.extremal,
                     report.eta_strong_hat, 1.0});
    }
    else
    {
        report.labels.emplace_back("eta_strong", kLower);
        const CheckOutcome cone =
            check_cone_implications(report.eta_strong_hat, op, ball, n, seed);
        report.cone_implications_passed = cone.passed;
        for (const Witness& w : cone.witnesses)
        {
            add_witness(report.witnesses, w);
        }
        // The functional carries the step scale: J = s/2 |F - y|^2, whose
        // operator is sqrt(s) F.
        const double jac = std::sqrt(model.step_scale()) * report.jacobian_sup_hat;
        if (jac > 0.0)
        {
            report.cone_pair = derive_ncgb_from_cone(report.eta_strong_hat, jac);
        }
        if (options.tau_gamma > 0.0)
        {
            report.tau_lower_bound_from_cone =
                balancing_tau_from_cone(report.eta_strong_hat, options.tau_gamma);
        }
    }

    if (options.tau_gamma > 0.0)
    {
        const BallSpec annulus =
            ball.with_inner_radius(options.inner_radius_fraction * ball.radius());
        const Estimate tau =
            estimate_tau_balancing(model, annulus, options.tau_gamma, n, seed);
        report.tau_hat = tau.value.value_or(0.0);
        report.labels.emplace_back("tau", report.tau_hat > 0.0 ? kLower : kFalsified);
        for (const Witness& w : tau.witnesses)
        {
            add_witness(report.witnesses, w);
        }
    }

    const CheckOutcome radial =
        check_radial_monotonicity(op, ball, std::min(1.0, report.eta_weak_hat), n,
                                  options.radial_grid, seed);
    report.radial_monotonicity_passed = radial.passed;
    for (const Witness& w : radial.witnesses)
    {
        add_witness(report.witnesses, w);
    }

    const auto phi = calibrate_phi(noiseless(model), ball, n, seed);
    report.phi_coefficient_hat = phi ? phi->coefficient : 0.0;
    report.labels.emplace_back("phi", phi ? kLower : kInconclusive);

    report.balance_profile = balance_ratio_profile(model, ball, 8, 10, seed);
    return report;
}

}  // namespace illposed
