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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Thresholds are the published ones; nothing here is
// tuned to the implementation.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "illposed/conditions.hpp"
#include "illposed/config.hpp"
#include "illposed/descent.hpp"
#include "illposed/experiment.hpp"
#include "illposed/functional.hpp"
#include "illposed/lemmas.hpp"
#include "illposed/problems.hpp"
#include "illposed/random.hpp"
#include "illposed/stop_rule.hpp"

namespace
{

using namespace illposed;
namespace fs = std::filesystem;
using nlohmann::json;

// Reasons a criterion failed.
struct Findings
{
    std::vector<std::string> problems;

    void require(bool ok, const std::string& what)
    {
        if (!ok)
        {
            problems.push_back(what);
        }
    }
};

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

fs::path work_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "illposed_acceptance" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path fixture(const std::string& name)
{
    return fs::path(ILLPOSED_FIXTURE_DIR) / name;
}

json read_json(const fs::path& p)
{
    std::ifstream in(p);
    return json::parse(in);
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct CliResult
{
    int status = -1;
    std::string out;
    std::string err;
};

CliResult cli(const std::vector<std::string>& args)
{
    std::vector<const char*> argv{"illposed-gd"};
    for (const std::string& a : args)
    {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int status = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

// 1. Closed-form quadratic reproduction.
void closed_form(Findings& v)
{
    const ProblemInstance p = build_quadratic(1, {0.5}, 2.0);
    const IterationTrace t = run_exact(p.exact, {1.0}, 200);
    v.require(!t.escaped(), "exact run left the ball");
    for (std::size_t k = 0; k <= 40; ++k)
    {
        const double expect = std::pow(0.5, static_cast<double>(k));
        const double rel = std::abs(t.iterates[k][0] - expect) / expect;
        v.require(rel <= 1e-12, "iterate " + std::to_string(k) + " off by " + num(rel));
    }
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < t.size(); ++k)
    {
        sum += t.grad_norms[k] * t.grad_norms[k];
    }
    v.require(std::abs(sum - 1.0 / 3.0) <= 1e-9, "gradient square sum " + num(sum));
    const double bound = t.values[0] / (1.0 - p.exact.lipschitz());
    v.require(std::abs(bound - 0.5) <= 1e-15, "bound " + num(bound));
    v.require(sum <= bound, "gradient square sum above J(x0)/(1-L)");
    v.require(check_descent(t, p.exact.lipschitz()).passed(), "descent check failed");
}

void lemma_suite_on(Findings& v, const ExperimentConfig& config, const std::string& label)
{
    const Setup setup = prepare(config);
    const Sweep sweep = run_sweep(setup, 4, true);
    std::size_t passed = 0;
    for (const ScopedCheck& c : verify_sweep(setup, sweep))
    {
        if (c.result.passed())
        {
            ++passed;
            continue;
        }
        std::string where = label + " " + c.result.lemma_id + " " + c.scope;
        if (c.noise_level)
        {
            where += " level " + num(*c.noise_level) + " seed " + std::to_string(*c.seed);
        }
        v.require(false, where + ": " + to_string(c.result.verdict) + " " + c.result.note);
    }
    // 3 exact checks + 3 noisy checks per cell
    const std::size_t expected = 3 + 3 * config.noise_levels.size() * config.seeds.size();
    v.require(passed == expected, label + ": " + std::to_string(passed) + " of "
                                      + std::to_string(expected) + " checks passed");
}

// 2. Every check passes on the quadratic and ODE problems, 10 seeds x 4 levels.
void lemma_suite(Findings& v)
{
    const std::vector<double> levels{1e-1, 1e-2, 1e-3, 1e-4};
    const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    ExperimentConfig q = load_config(fixture("quadratic.json"));
    q.noise_levels = levels;
    q.seeds = seeds;
    lemma_suite_on(v, q, "quadratic");
    ExperimentConfig ode = load_config(fixture("ode_verify.json"));
    ode.noise_levels = levels;
    ode.seeds = seeds;
    lemma_suite_on(v, ode, "ode-param");
}

// 3. Each check fails on its corrupted trace, through the verify command.
void fault_injection(Findings& v)
{
    for (const std::string& id : lemma_ids())
    {
        const fs::path dir = work_dir("fault_" + id);
        json cfg = read_json(fixture("quadratic.json"));
        cfg["noise_levels"] = {1e-2};
        cfg["seeds"] = {1};
        cfg["inject_fault"] = id;
        const fs::path path = dir / "config.json";
        std::ofstream(path) << cfg.dump(2);
        const CliResult r = cli({"verify", "--config", path.string(), "--out", dir.string()});
        v.require(r.status == 1, id + ": exit status " + std::to_string(r.status));
        v.require(r.out.find("FAIL " + id + " ") != std::string::npos,
                  id + ": failing check not named");
        std::size_t fails = 0;
        for (std::size_t pos = r.out.find("FAIL "); pos != std::string::npos;
             pos = r.out.find("FAIL ", pos + 1))
        {
            ++fails;
        }
        v.require(fails == 1, id + ": " + std::to_string(fails) + " FAIL lines");
    }
}

// Shared by criteria 4 and 5.
double scalar_eta_strong = NAN;

// 4. Condition-lab calibration.
void calibration(Findings& v)
{
    const ProblemInstance q = build_quadratic(2, {0.5, 0.1});
    const BallSpec& ball = q.ball();
    const Estimate beta =
        estimate_beta(q.exact, ball, Gamma::finite(0.0), 10000,
                      default_grad_floor(q.exact.lipschitz(), ball.radius()),
                      kDefaultSamplerSeed);
    v.require(beta.conclusive(), "beta estimate inconclusive");
    if (beta.conclusive())
    {
        v.require(*beta.value >= -2.0 && *beta.value <= -1.96,
                  "beta_hat " + num(*beta.value) + " outside [-2, -1.96]");
    }
    const Estimate tau = estimate_tau_balancing(
        q.exact, ball.with_inner_radius(0.5 * ball.radius()), 0.25, 10000,
        kDefaultSamplerSeed);
    v.require(tau.conclusive() && *tau.value >= 0.499 && *tau.value <= 0.5,
              "tau_hat " + num(tau.value.value_or(NAN)) + " outside [0.499, 0.5]");
    const Estimate weak =
        estimate_eta_weak(q.op, ball, 10000, kDefaultResidualFloor, kDefaultSamplerSeed);
    v.require(weak.conclusive() && *weak.value < 1e-10,
              "eta_weak_hat " + num(weak.value.value_or(NAN)));

    const ProblemInstance s = build_scalar_quadratic_operator(0.1);
    const Estimate strong = estimate_eta_strong(s.op, s.ball(), 10000, kDefaultResidualFloor,
                                                kDefaultSamplerSeed);
    v.require(strong.conclusive() && *strong.value <= 0.27,
              "eta_strong_hat " + num(strong.value.value_or(NAN)));
    scalar_eta_strong = strong.value.value_or(NAN);
}

// 5. The cone-derived angle condition is consistent with the sampled beta.
void cone_consistency(Findings& v)
{
    if (!std::isfinite(scalar_eta_strong) || scalar_eta_strong >= 1.0)
    {
        v.require(false, "no usable eta from the calibration step");
        return;
    }
    const ProblemInstance s = build_scalar_quadratic_operator(0.1);
    // Least-squares functional with step s: grad J = s F'^*(F - y), so the
    // relevant operator bound is sqrt(s) sup |F'|.
    const double jac = std::sqrt(s.exact.step_scale())
                       * estimate_jacobian_sup(s.op, s.ball(), 10000, kDefaultSamplerSeed);
    const ConeDerivedPair pair = derive_ncgb_from_cone(scalar_eta_strong, jac);
    v.require(pair.beta < 0.0, "derived beta " + num(pair.beta) + " not negative");
    const Estimate beta =
        estimate_beta(s.exact, s.ball(), Gamma::finite(pair.gamma), 10000,
                      default_grad_floor(s.exact.lipschitz(), s.ball().radius()),
                      kDefaultSamplerSeed);
    v.require(beta.conclusive(), "beta estimate at derived gamma inconclusive");
    if (beta.conclusive())
    {
        const double limit = pair.beta + 0.05 * std::abs(pair.beta);
        v.require(*beta.value <= limit, "beta_hat " + num(*beta.value)
                                            + " exceeds derived beta " + num(pair.beta)
                                            + " by more than 5%");
    }
}

// 6. Noise study on the ODE problem decreases along the ladder.
void ode_study(Findings& v)
{
    const fs::path dir = work_dir("ode_study");
    const CliResult r = cli({"study", "--config", fixture("ode_study.json").string(),
                             "--out", dir.string(), "--workers", "4"});
    v.require(r.status == 0, "study exit status " + std::to_string(r.status) + " " + r.err);
    if (r.status != 0)
    {
        return;
    }
    const json j = read_json(dir / "study.json");
    v.require(j["problem"] == "ode-param", "wrong problem");
    v.require(j["dimension"] == 32, "wrong grid");
    v.require(j["trend_verdict"] == "decreasing",
              "trend " + j["trend_verdict"].get<std::string>());
    double previous = INFINITY;
    for (const json& m : j["medians"])
    {
        const double e = m["median_final_error"].get<double>();
        v.require(e < previous, "median " + num(e) + " not below " + num(previous));
        previous = e;
    }
}

// 7. Stopping-rule clauses over delta = 1e-1 .. 1e-8.
void stopping_clauses(Findings& v)
{
    for (double xi : {1.0, 1.5})
    {
        StoppingPolicy p;
        p.c0 = 1.0;
        p.kappa = 0.5;
        p.rho = 2.0;
        p.xi = xi;
        std::size_t previous_n = 0;
        double previous_nd = INFINITY;
        double delta = 1e-1;
        for (int e = 1; e <= 8; ++e, delta /= 10.0)
        {
            const std::size_t n = stopping_index(p, delta);
            const double nd = static_cast<double>(n) * delta;
            v.require(static_cast<double>(n + 1) * delta <= p.rho / (2.0 * p.xi),
                      "cap clause fails at delta " + num(delta));
            if (e > 1)
            {
                v.require(n > previous_n, "N not growing at delta " + num(delta));
                v.require(nd < previous_nd, "N delta not decreasing at " + num(delta));
            }
            previous_n = n;
            previous_nd = nd;
        }
        v.require(previous_nd < 1e-3, "N delta at 1e-8 is " + num(previous_nd));
    }
}

// 8. Analytic gradients against central differences.
void gradient_fidelity(Findings& v)
{
    std::vector<ProblemInstance> problems;
    problems.push_back(build_quadratic(10, default_quadratic_spectrum(10)));
    problems.push_back(build_scalar_quadratic_operator(0.1));
    problems.push_back(build_autoconvolution(32, default_autoconvolution_signal(32), 0.5));
    problems.push_back(build_ode_parameter_id(32, default_ode_coefficient(32),
                                              default_ode_source(32), 2.0));
    for (const ProblemInstance& p : problems)
    {
        SplitMix64 rng(derive_seed(2026, 8));
        const double h = 1e-5 * p.ball().radius();
        for (int i = 0; i < 20; ++i)
        {
            const Vector x = uniform_in_ball(
                rng, BallSpec(p.ball().center(), 0.9 * p.ball().radius()));
            const double rel = gradient_check(p.exact, x, h);
            v.require(rel <= 1e-6, p.name + " point " + std::to_string(i) + ": " + num(rel));
        }
    }
}

// 9. Byte-identical artifacts across repeated runs and worker counts.
void determinism(Findings& v)
{
    const std::vector<std::string> commands{"run", "study", "verify", "diagnose"};
    const std::vector<std::pair<std::string, std::string>> runs{
        {"a", "1"}, {"b", "4"}, {"c", "3"}};
    std::vector<fs::path> dirs;
    for (const auto& [tag, workers] : runs)
    {
        const fs::path dir = work_dir("determinism_" + tag);
        for (const std::string& cmd : commands)
        {
            const CliResult r = cli({cmd, "--config", fixture("quadratic.json").string(),
                                     "--out", dir.string(), "--workers", workers});
            v.require(r.status == 0, cmd + " exit status " + std::to_string(r.status));
        }
        dirs.push_back(dir);
    }
    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(dirs[0]))
    {
        const std::string ext = entry.path().extension().string();
        if (ext != ".csv" && ext != ".json")
        {
            continue;
        }
        const std::string ref = slurp(entry.path());
        for (std::size_t i = 1; i < dirs.size(); ++i)
        {
            const fs::path other = dirs[i] / entry.path().filename();
            v.require(fs::exists(other) && slurp(other) == ref,
                      entry.path().filename().string() + " differs in run "
                          + runs[i].first);
        }
        ++compared;
    }
    v.require(compared >= 20, "only " + std::to_string(compared) + " artifacts compared");
}

struct Criterion
{
    int id;
    std::string title;
    std::function<void(Findings&)> body;
    double time_limit_s;
};

}  // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "closed-form quadratic reproduction", closed_form, 1.0},
        {2, "convergence inequalities hold on quadratic and ode-param", lemma_suite, 60.0},
        {3, "every check flags its injected fault", fault_injection, 0.0},
        {4, "condition estimators calibrated on closed forms", calibration, 30.0},
        {5, "cone-derived angle condition consistent with sampling", cone_consistency,
         0.0},
        {6, "ode-param noise study decreases", ode_study, 300.0},
        {7, "stopping-index clauses", stopping_clauses, 0.0},
        {8, "analytic gradients match finite differences", gradient_fidelity, 0.0},
        {9, "artifacts independent of repetition and worker count", determinism, 0.0},
    };
    int failed = 0;
    for (const Criterion& c : criteria)
    {
        Findings v;
        const auto start = std::chrono::steady_clock::now();
        try
        {
            c.body(v);
        }
        catch (const std::exception& e)
        {
            v.require(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit_s > 0.0)
        {
            v.require(secs < c.time_limit_s,
                      "took " + num(secs) + " s, limit " + num(c.time_limit_s) + " s");
        }
        const bool ok = v.problems.empty();
        failed += ok ? 0 : 1;
        std::printf("%s criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", c.id,
                    c.title.c_str(), secs);
        for (const std::string& p : v.problems)
        {
            std::printf("    %s\n", p.c_str());
        }
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed == 0 ? 0 : 1;
}
