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

#include "illposed/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <sstream>
#include <thread>

#include "illposed/conditions.hpp"
#include "illposed/errors.hpp"
#include "illposed/trace_io.hpp"

namespace illposed
{

using nlohmann::json;
namespace fs = std::filesystem;

namespace
{

constexpr std::size_t kMaxExactIter = 1000000;

// Runs fn(i) for i in [0, n) on up to `workers` threads. The first
// exception in index order is rethrown after every thread has joined.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn fn)
{
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto body = [&]
    {
        for (std::size_t i = next++; i < n; i = next++)
        {
            try
            {
                fn(i);
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
    if (threads == 1)
    {
        body();
    }
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t)
        {
            pool.emplace_back(body);
        }
        for (std::thread& t : pool)
        {
            t.join();
        }
    }
    for (const std::exception_ptr& e : errors)
    {
        if (e)
        {
            std::rethrow_exception(e);
        }
    }
}

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n == 0)
    {
        return 0.0;
    }
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::size_t worker_count(const ExperimentConfig& config, const CommandOptions& options)
{
    return std::max<std::size_t>(1, options.workers.value_or(config.workers));
}

fs::path output_dir(const ExperimentConfig& config, const CommandOptions& options)
{
    return fs::path(options.out_dir.value_or(config.output_dir));
}

std::string cell_stem(const Cell& cell)
{
    return "noisy_l" + std::to_string(cell.level_index) + "_s" + std::to_string(cell.seed);
}

json smallness_json(const SmallnessReport& s)
{
    return {{"lhs", s.lhs}, {"rhs", s.rhs}, {"holds", s.holds}};
}

json setup_json(const Setup& s)
{
    const BallSpec& ball = s.problem.ball();
    json j;
    j["problem"] = s.problem.name;
    j["dimension"] = ball.dimension();
    j["radius"] = ball.radius();
    j["step_scale"] = s.problem.exact.step_scale();
    j["lipschitz"] = s.problem.exact.lipschitz();
    j["x0_error"] = norm(s.x0 - ball.center());
    j["beta"] = {{"value", s.constants.beta},
                 {"before_margin", s.beta_raw},
                 {"source", s.beta_source}};
    j["theta"] = s.constants.theta;
    j["xi"] = s.constants.xi;
    j["stop"] = {{"c0", s.policy.c0}, {"kappa", s.policy.kappa}};
    j["jacobian_sup"] = s.jacobian_sup;
    j["phi_coefficient"] = s.phi.coefficient;
    return j;
}

std::string trace_csv(const IterationTrace& trace)
{
    std::ostringstream out;
    write_trace_csv(out, trace);
    return out.str();
}

std::string fmt(double v, const char* spec = "%.6g")
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

}  // namespace

Setup prepare(const ExperimentConfig& config)
{
    ProblemInstance problem = build_problem(config);
    Vector x0 = initial_guess(config, problem);
    const FunctionalModel& exact = problem.exact;
    const BallSpec& ball = problem.ball();

    double beta = 0.0;
    std::string source;
    if (problem.facts.beta)
    {
        beta = *problem.facts.beta;
        source = "analytic";
    }
    else
    {
        const Estimate est =
            estimate_beta(exact, ball, Gamma::finite(0.0), config.condition_samples,
                          default_grad_floor(exact.lipschitz(), ball.radius()),
                          kDefaultSamplerSeed);
        beta = est.value.value_or(0.0);
        source = est.value ? "estimated" : "fallback";
    }
    const StopConstants constants = stop_constants(inflate_beta(beta));
    StoppingPolicy policy{config.stop_c0, config.stop_kappa, ball.radius(), constants.xi};
    policy.validate();

    const NoiseOptions noise;
    const double jac_sup =
        noise.safety_factor
        * estimate_jacobian_sup(problem.op, ball, noise.sup_samples, noise.sup_seed);
    const PhiBound phi{2.0 * exact.step_scale() * jac_sup * jac_sup};

    return Setup{config, std::move(problem), std::move(x0), beta, source,
                 constants, policy, jac_sup, phi};
}

Sweep run_sweep(const Setup& setup, std::size_t workers, bool with_exact)
{
    const ExperimentConfig& config = setup.config;
    const ProblemInstance& problem = setup.problem;
    const std::size_t seeds = config.seeds.size();
    const std::size_t n = config.noise_levels.size() * seeds;

    std::vector<std::optional<Cell>> slots(n);
    parallel_for(n, workers, [&](std::size_t i)
    {
        const std::size_t level_index = i / seeds;
        const double level = config.noise_levels[level_index];
        const std::uint64_t seed = config.seeds[i % seeds];
        NoisyFunctional noisy = make_noisy(problem.op, problem.exact, level, seed);
        const std::size_t steps = stopping_index(setup.policy, noisy.delta);
        Cell cell{level_index, level, seed, std::move(noisy), steps, std::nullopt, {}};
        try
        {
            cell.trace = run_noisy(cell.noisy, problem.exact, setup.x0, steps,
                                   config.track_exact);
        }
        catch (const Refusal& e)
        {
            cell.refusal = e.what();
        }
        slots[i] = std::move(cell);
    });

    Sweep sweep;
    sweep.cells.reserve(n);
    for (auto& slot : slots)
    {
        sweep.cells.push_back(std::move(*slot));
    }
    if (with_exact)
    {
        sweep.exact_max_iter = default_exact_max_iter(setup, sweep);
        sweep.exact = run_exact(problem.exact, setup.x0, sweep.exact_max_iter);
    }
    return sweep;
}

std::size_t default_exact_max_iter(const Setup& setup, const Sweep& sweep)
{
    if (setup.config.max_iter)
    {
        return *setup.config.max_iter;
    }
    const double smallest = *std::min_element(setup.config.noise_levels.begin(),
                                              setup.config.noise_levels.end());
    std::size_t n = 0;
    for (const Cell& c : sweep.cells)
    {
        if (c.noise_level == smallest)
        {
            n = std::max(n, c.n_delta);
        }
    }
    return std::min(kMaxExactIter, 10 * std::max<std::size_t>(n, 1));
}

SmallnessReport initial_smallness(const Setup& setup)
{
    const FunctionalModel& exact = setup.problem.exact;
    const double theta = setup.constants.theta;
    const double j0 = exact.value(setup.x0);
    const double gap = std::abs(1.0 - exact.lipschitz());
    const double e0 = squared_norm(setup.x0 - setup.problem.ball().center());
    SmallnessReport r;
    r.lhs = e0 + 2.0 * theta / gap * j0 + theta * setup.phi(j0);
    const double rho = setup.problem.ball().radius();
    r.rhs = rho * rho / 16.0;
    r.holds = r.lhs <= r.rhs;
    return r;
}

NoiseSmallness noise_smallness(const Setup& setup, const NoisyFunctional& noisy)
{
    const FunctionalModel& exact = setup.problem.exact;
    const double L = exact.lipschitz();
    const double theta = setup.constants.theta;
    const double rho = setup.problem.ball().radius();
    const double psi = noisy.psi_delta;
    const double j0 = exact.value(setup.x0);

    NoiseSmallness s;
    s.delta_clause = {noisy.delta, (1.0 - L) / 2.0, noisy.delta < (1.0 - L) / 2.0};
    s.phi_clause.lhs = setup.phi(j0 + psi);
    s.phi_clause.rhs = setup.phi(j0) + rho * rho / (8.0 * theta);
    s.phi_clause.holds = s.phi_clause.lhs <= s.phi_clause.rhs;
    s.psi_clause.lhs = 2.0 * theta / std::abs(1.0 - L) * psi;
    s.psi_clause.rhs = rho * rho / 8.0;
    s.psi_clause.holds = s.psi_clause.lhs <= s.psi_clause.rhs;
    return s;
}

const char* to_string(TrendVerdict v)
{
    switch (v)
    {
        case TrendVerdict::decreasing:
            return "decreasing";
        case TrendVerdict::non_monotone:
            return "non-monotone";
        case TrendVerdict::inconclusive:
            return "inconclusive";
    }
    return "unknown";
}

TrendVerdict trend_verdict(const std::vector<double>& medians,
                           bool trouble_at_smallest_levels)
{
    if (trouble_at_smallest_levels || medians.size() < 2)
    {
        return TrendVerdict::inconclusive;
    }
    constexpr double kRungSlack = 1.05;
    for (std::size_t i = 1; i < medians.size(); ++i)
    {
        if (!(medians[i] < kRungSlack * medians[i - 1]))
        {
            return TrendVerdict::non_monotone;
        }
    }
    return medians.back() < medians.front() ? TrendVerdict::decreasing
                                            : TrendVerdict::non_monotone;
}

StudyResult summarize_study(const Sweep& sweep)
{
    StudyResult result;
    std::vector<std::vector<double>> per_level;
    std::vector<bool> trouble;
    for (const Cell& cell : sweep.cells)
    {
        if (cell.level_index >= result.levels.size())
        {
            result.levels.push_back(cell.noise_level);
            per_level.emplace_back();
            trouble.push_back(false);
        }
        StudyRow row;
        row.noise_level = cell.noise_level;
        row.seed = cell.seed;
        row.delta = cell.noisy.delta;
        row.n_delta = cell.n_delta;
        row.zero_iterations = cell.n_delta == 0;
        if (cell.trace)
        {
            const IterationTrace& t = *cell.trace;
            row.final_error = t.errors.back();
            row.min_error = *std::min_element(t.errors.begin(), t.errors.end());
            if (t.tracks_exact())
            {
                row.final_J = t.exact_values.back();
            }
            row.escaped = t.escaped();
        }
        else
        {
            row.refused = true;
        }
        if (row.escaped || row.refused)
        {
            trouble[cell.level_index] = true;
        }
        if (!row.refused)
        {
            per_level[cell.level_index].push_back(row.final_error);
        }
        result.rows.push_back(row);
    }
    for (const auto& errors : per_level)
    {
        result.median_final_error.push_back(median(errors));
    }
    const std::size_t m = result.levels.size();
    bool smallest_trouble = false;
    for (std::size_t i = (m >= 2 ? m - 2 : 0); i < m; ++i)
    {
        // An empty level (every run refused) also leaves the trend open.
        smallest_trouble = smallest_trouble || trouble[i] || per_level[i].empty();
    }
    result.verdict = trend_verdict(result.median_final_error, smallest_trouble);
    return result;
}

std::vector<ScopedCheck> verify_sweep(const Setup& setup, const Sweep& sweep)
{
    const std::optional<std::string>& fault = setup.config.inject_fault;
    auto input = [&](const IterationTrace& t, const char* id) -> IterationTrace
    { return fault && *fault == id ? inject_fault(t, id) : t; };

    const double L = setup.problem.exact.lipschitz();
    const double beta = setup.constants.beta;
    std::vector<ScopedCheck> out;
    if (sweep.exact)
    {
        const IterationTrace& exact = *sweep.exact;
        out.push_back({"exact", {}, {}, check_descent(input(exact, kDescent), L)});
        out.push_back(
            {"exact", {}, {}, check_error_bound(input(exact, kErrorBound), beta, L)});
        out.push_back(
            {"exact", {}, {}, check_summability(input(exact, kSummability), beta, L)});
    }
    for (const Cell& cell : sweep.cells)
    {
        const double delta = cell.noisy.delta;
        auto scoped = [&](LemmaCheckResult r)
        { return ScopedCheck{"noisy", cell.noise_level, cell.seed, std::move(r)}; };
        if (!cell.trace)
        {
            for (const char* id : {kNoisyRecursion, kNoisyUniform, kDivergenceRecursion})
            {
                LemmaCheckResult r;
                r.lemma_id = id;
                r.verdict = Verdict::inapplicable;
                r.note = cell.refusal;
                out.push_back(scoped(std::move(r)));
            }
            continue;
        }
        const IterationTrace& t = *cell.trace;
        out.push_back(scoped(
            check_noisy_recursion(input(t, kNoisyRecursion), setup.constants, delta)));
        out.push_back(scoped(check_noisy_uniform(input(t, kNoisyUniform), setup.constants,
                                                 delta, cell.noisy.lipschitz_noisy,
                                                 t.values.front())));
        if (sweep.exact)
        {
            out.push_back(scoped(check_divergence_recursion(
                input(t, kDivergenceRecursion), *sweep.exact, L, delta)));
        }
    }
    return out;
}

int cmd_run(const ExperimentConfig& config, const CommandOptions& options,
            std::ostream& out)
{
    const Setup setup = prepare(config);
    const Sweep sweep = run_sweep(setup, worker_count(config, options), true);
    const fs::path dir = output_dir(config, options);
    const IterationTrace& exact = *sweep.exact;

    write_text_file(dir / "exact.csv", trace_csv(exact));
    write_text_file(dir / "exact.json",
                    dump_json(trace_to_json(exact, {setup.problem.name, "exact", 0.0, 0, 0.0})));

    const double beta = setup.constants.beta;
    const double rho = setup.problem.ball().radius();
    const double init_lhs = init_condition_lhs(setup.x0, setup.problem.exact, beta,
                                               setup.problem.ball());
    const bool init_holds = check_init_condition(setup.x0, setup.problem.exact, beta,
                                                 setup.problem.ball());
    const SmallnessReport initial = initial_smallness(setup);

    json summary = setup_json(setup);
    summary["initial_guess_condition"] = {
        {"lhs", init_lhs}, {"rhs", rho * rho}, {"holds", init_holds}};
    summary["initial_smallness"] = smallness_json(initial);
    summary["exact_run"] = {{"max_iter", sweep.exact_max_iter},
                            {"stopped_at", exact.stopped_at},
                            {"escaped_at", exact.escaped_at ? json(*exact.escaped_at) : json(nullptr)},
                            {"final_error", exact.errors.back()},
                            {"final_J", exact.values.back()}};
    json cells = json::array();
    for (const Cell& cell : sweep.cells)
    {
        json c;
        c["noise_level"] = cell.noise_level;
        c["seed"] = cell.seed;
        c["delta"] = cell.noisy.delta;
        c["psi_delta"] = cell.noisy.psi_delta;
        c["lipschitz_noisy"] = cell.noisy.lipschitz_noisy;
        c["N_delta"] = cell.n_delta;
        const NoiseSmallness s = noise_smallness(setup, cell.noisy);
        c["noise_smallness"] = {{"delta_clause", smallness_json(s.delta_clause)},
                                {"phi_clause", smallness_json(s.phi_clause)},
                                {"psi_clause", smallness_json(s.psi_clause)},
                                {"holds", s.holds()}};
        if (cell.trace)
        {
            const IterationTrace& t = *cell.trace;
            const std::string stem = cell_stem(cell);
            write_text_file(dir / (stem + ".csv"), trace_csv(t));
            write_text_file(dir / (stem + ".json"),
                            dump_json(trace_to_json(t, {setup.problem.name, "noisy",
                                                        cell.noise_level, cell.seed,
                                                        cell.noisy.delta})));
            c["trace"] = stem;
            c["stopped_at"] = t.stopped_at;
            c["escaped_at"] = t.escaped_at ? json(*t.escaped_at) : json(nullptr);
            c["final_error"] = t.errors.back();
            c["min_error"] = *std::min_element(t.errors.begin(), t.errors.end());
            c["refusal"] = nullptr;
        }
        else
        {
            c["trace"] = nullptr;
            c["stopped_at"] = nullptr;
            c["escaped_at"] = nullptr;
            c["final_error"] = nullptr;
            c["min_error"] = nullptr;
            c["refusal"] = cell.refusal;
        }
        cells.push_back(std::move(c));
    }
    summary["noisy_runs"] = std::move(cells);
    write_text_file(dir / "summary.json", dump_json(summary));

    if (options.gnuplot)
    {
        std::ostringstream gp;
        gp << "set logscale y\nset xlabel 'k'\nset ylabel '|x_k - x*|'\n"
           << "set datafile separator ','\nset key autotitle columnhead\n"
           << "plot 'exact.csv' using 1:2 with lines title 'exact'";
        for (const Cell& cell : sweep.cells)
        {
            if (cell.trace)
            {
                gp << ", \\\n     '" << cell_stem(cell) << ".csv' using 1:2 with lines title '"
                   << "level " << fmt(cell.noise_level) << " seed " << cell.seed << "'";
            }
        }
        gp << "\n";
        write_text_file(dir / "plot.gp", gp.str());
    }

    out << "problem " << setup.problem.name << ", dimension "
        << setup.problem.ball().dimension() << ", radius " << fmt(rho) << ", L "
        << fmt(setup.problem.exact.lipschitz()) << ", beta " << fmt(beta) << " ("
        << setup.beta_source << ")\n";
    out << "initial-guess smallness condition: " << (init_holds ? "holds" : "does not hold")
        << " (" << fmt(init_lhs) << " < " << fmt(rho * rho) << ")\n";
    out << "noisy-run closeness condition on x0: " << (initial.holds ? "holds" : "does not hold")
        << " (" << fmt(initial.lhs) << " <= " << fmt(initial.rhs) << ")\n";
    out << "exact run: " << exact.stopped_at << " steps, final error "
        << fmt(exact.errors.back())
        << (exact.escaped() ? ", LEFT THE BALL at step " + std::to_string(*exact.escaped_at) : "")
        << "\n";
    for (const Cell& cell : sweep.cells)
    {
        const NoiseSmallness s = noise_smallness(setup, cell.noisy);
        out << "level " << fmt(cell.noise_level) << " seed " << cell.seed << ": delta "
            << fmt(cell.noisy.delta) << ", N " << cell.n_delta << ", noise smallness "
            << (s.holds() ? "holds" : "does not hold");
        if (!cell.trace)
        {
            out << ", refused: " << cell.refusal << "\n";
            continue;
        }
        out << ", final error " << fmt(cell.trace->errors.back());
        if (cell.trace->escaped())
        {
            out << ", LEFT THE BALL at step " << *cell.trace->escaped_at;
        }
        out << "\n";
    }
    out << "artifacts written to " << dir.string() << "\n";
    return 0;
}

int cmd_study(const ExperimentConfig& config, const CommandOptions& options,
              std::ostream& out)
{
    require_study_ladder(config);
    const Setup setup = prepare(config);
    const Sweep sweep = run_sweep(setup, worker_count(config, options), false);
    const StudyResult study = summarize_study(sweep);
    const fs::path dir = output_dir(config, options);

    std::ostringstream csv;
    csv << "noise_level,seed,delta,N_delta,final_error,final_J,min_error,escaped,refused,"
           "zero_iterations\n";
    json rows = json::array();
    for (const StudyRow& r : study.rows)
    {
        csv << format_double(r.noise_level) << ',' << r.seed << ','
            << format_double(r.delta) << ',' << r.n_delta << ','
            << format_double(r.final_error) << ','
            << (r.final_J ? format_double(*r.final_J) : "") << ','
            << format_double(r.min_error) << ',' << r.escaped << ',' << r.refused << ','
            << r.zero_iterations << '\n';
        rows.push_back({{"noise_level", r.noise_level},
                        {"seed", r.seed},
                        {"delta", r.delta},
                        {"N_delta", r.n_delta},
                        {"final_error", r.final_error},
                        {"final_J", r.final_J ? json(*r.final_J) : json(nullptr)},
                        {"min_error", r.min_error},
                        {"escaped", r.escaped},
                        {"refused", r.refused},
                        {"zero_iterations", r.zero_iterations}});
    }
    std::ostringstream medians_csv;
    medians_csv << "noise_level,median_final_error\n";
    json medians = json::array();
    for (std::size_t i = 0; i < study.levels.size(); ++i)
    {
        medians_csv << format_double(study.levels[i]) << ','
                    << format_double(study.median_final_error[i]) << '\n';
        medians.push_back({{"noise_level", study.levels[i]},
                           {"median_final_error", study.median_final_error[i]}});
    }
    json j = setup_json(setup);
    j["rows"] = std::move(rows);
    j["medians"] = std::move(medians);
    j["trend_verdict"] = to_string(study.verdict);
    write_text_file(dir / "study.csv", csv.str());
    write_text_file(dir / "study_medians.csv", medians_csv.str());
    write_text_file(dir / "study.json", dump_json(j));
    if (options.gnuplot)
    {
        write_text_file(dir / "plot.gp",
                        "set logscale xy\nset xlabel 'noise level'\n"
                        "set ylabel 'median |x_N - x*|'\nset datafile separator ','\n"
                        "plot 'study_medians.csv' using 1:2 skip 1 with linespoints "
                        "title 'median final error', \\\n"
                        "     'study.csv' using 1:5 skip 1 with points title 'runs'\n");
    }

    out << "level        median final error\n";
    for (std::size_t i = 0; i < study.levels.size(); ++i)
    {
        out << fmt(study.levels[i], "%-12.4g") << " " << fmt(study.median_final_error[i])
            << "\n";
    }
    out << "trend: " << to_string(study.verdict) << "\n";
    out << "artifacts written to " << dir.string() << "\n";
    return 0;
}

int cmd_diagnose(const ExperimentConfig& config, const CommandOptions& options,
                 std::ostream& out)
{
    ProblemInstance problem = build_problem(config);
    DiagnoseOptions opts;
    opts.samples = config.condition_samples;
    opts.gamma = config.diagnose_gamma;
    opts.tau_gamma = config.diagnose_tau_gamma;
    const ConditionReport report = diagnose_conditions(problem.op, problem.exact, opts);

    json j = to_json(report);
    j["problem"] = problem.name;
    j["dimension"] = problem.ball().dimension();
    j["radius"] = problem.ball().radius();
    j["step_scale"] = problem.exact.step_scale();
    json facts = json::object();
    const AnalyticFacts& f = problem.facts;
    auto put = [&](const char* key, const std::optional<double>& v)
    {
        if (v)
        {
            facts[key] = *v;
        }
    };
    put("lipschitz", f.lipschitz);
    put("eta_weak_bound", f.eta_weak);
    put("eta_strong_bound", f.eta_strong);
    put("beta", f.beta);
    if (f.tau_is_sqrt_gamma)
    {
        facts["tau"] = std::sqrt(opts.tau_gamma);
    }
    j["analytic_facts"] = std::move(facts);
    const fs::path dir = output_dir(config, options);
    write_text_file(dir / "diagnose.json", dump_json(j));

    auto label = [&](const std::string& name) -> std::string
    {
        for (const auto& [key, value] : report.labels)
        {
            if (key == name)
            {
                return value;
            }
        }
        return "";
    };
    out << "constant        estimate        label\n";
    auto line = [&](const char* name, const std::string& value, const std::string& key)
    {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-15s %-15s %s\n", name, value.c_str(),
                      label(key).c_str());
        out << buf;
    };
    line("lipschitz", fmt(report.lipschitz_hat), "lipschitz");
    line(("beta(" + report.gamma.to_string() + ")").c_str(),
         report.beta_hat ? fmt(*report.beta_hat) : "none", "beta");
    line("eta_weak", fmt(report.eta_weak_hat), "eta_weak");
    line("eta_strong", fmt(report.eta_strong_hat), "eta_strong");
    line(("tau(" + fmt(report.tau_gamma) + ")").c_str(), fmt(report.tau_hat), "tau");
    line("phi", fmt(report.phi_coefficient_hat), "phi");
    if (report.cone_pair)
    {
        out << "cone-derived angle condition: gamma " << fmt(report.cone_pair->gamma)
            << ", beta " << fmt(report.cone_pair->beta) << "\n";
    }
    if (report.tau_lower_bound_from_cone)
    {
        out << "cone-derived balancing tau >= " << fmt(*report.tau_lower_bound_from_cone)
            << "\n";
    }
    out << "radial monotonicity: " << (report.radial_monotonicity_passed ? "pass" : "fail")
        << ", cone implications: " << (report.cone_implications_passed ? "pass" : "fail")
        << ", witnesses: " << report.witnesses.size() << "\n";
    out << "report written to " << (dir / "diagnose.json").string() << "\n";
    return 0;
}

int cmd_verify(const ExperimentConfig& config, const CommandOptions& options,
               std::ostream& out)
{
    const Setup setup = prepare(config);
    const Sweep sweep = run_sweep(setup, worker_count(config, options), true);
    const std::vector<ScopedCheck> checks = verify_sweep(setup, sweep);

    json arr = json::array();
    bool failed = false;
    char buf[200];
    std::snprintf(buf, sizeof buf, "%-22s %-13s %-14s %s\n", "check", "verdict",
                  "worst margin", "run");
    out << buf;
    for (const ScopedCheck& c : checks)
    {
        json j = to_json(c.result);
        j["scope"] = c.scope;
        j["noise_level"] = c.noise_level ? json(*c.noise_level) : json(nullptr);
        j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
        arr.push_back(std::move(j));

        std::string run = c.scope;
        if (c.noise_level)
        {
            run += " level " + fmt(*c.noise_level) + " seed " + std::to_string(*c.seed);
        }
        const std::string margin =
            c.result.worst_margin ? fmt(*c.result.worst_margin, "%.3e") : "-";
        std::snprintf(buf, sizeof buf, "%-22s %-13s %-14s %s\n", c.result.lemma_id.c_str(),
                      to_string(c.result.verdict), margin.c_str(), run.c_str());
        out << buf;
        failed = failed || c.result.verdict == Verdict::fail;
    }
    for (const ScopedCheck& c : checks)
    {
        if (c.result.verdict == Verdict::fail)
        {
            out << "FAIL " << c.result.lemma_id << " (" << c.scope << " run";
            if (c.noise_level)
            {
                out << ", level " << fmt(*c.noise_level) << ", seed " << *c.seed;
            }
            out << ", step " << *c.result.witness_step << ")\n";
        }
    }
    const fs::path dir = output_dir(config, options);
    write_text_file(dir / "verify.json", dump_json(arr));
    out << (failed ? "some checks failed" : "all applicable checks passed") << "\n";
    return failed ? 1 : 0;
}

}  // namespace illposed
