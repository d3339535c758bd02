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

#include "illposed/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "illposed/errors.hpp"
#include "illposed/lemmas.hpp"
#include "illposed/trace_io.hpp"

namespace illposed
{

using nlohmann::json;

namespace
{

const std::set<std::string> kProblemKeys{"dimension",  "radius",
                                         "spectrum",   "true_signal",
                                         "true_coefficient", "source",
                                         "step_scale"};

const std::set<std::string> kTopKeys{
    "problem",     "dimension",        "radius",     "spectrum",
    "true_signal", "true_coefficient", "source",     "step_scale",
    "x0_offset",   "data_noise_level", "seed",       "noise_levels",
    "seeds",       "stop",             "condition_samples",
    "track_exact", "max_iter",         "output_dir", "workers",
    "diagnose",    "inject_fault",     "prng",       "description"};

[[noreturn]] void fail(const std::string& message)
{
    throw ConfigError(message);
}

double positive_number(const json& j, const std::string& key)
{
    if (!j.is_number())
    {
        fail("'" + key + "' must be a number");
    }
    const double v = j.get<double>();
    if (!(v > 0.0) || !std::isfinite(v))
    {
        fail("'" + key + "' must be positive and finite");
    }
    return v;
}

std::size_t count(const json& j, const std::string& key, std::size_t minimum)
{
    if (!j.is_number_integer() || j.get<long long>() < static_cast<long long>(minimum))
    {
        fail("'" + key + "' must be an integer >= " + std::to_string(minimum));
    }
    return j.get<std::size_t>();
}

std::uint64_t seed_value(const json& j, const std::string& key)
{
    if (j.is_number_unsigned())
    {
        return j.get<std::uint64_t>();
    }
    if (j.is_number_integer() && j.get<long long>() >= 0)
    {
        return static_cast<std::uint64_t>(j.get<long long>());
    }
    fail("'" + key + "' must be a nonnegative integer");
}

std::vector<double> number_list(const json& j, const std::string& key)
{
    if (!j.is_array() || j.empty())
    {
        fail("'" + key + "' must be a non-empty array of numbers");
    }
    std::vector<double> out;
    for (const json& e : j)
    {
        if (!e.is_number() || !std::isfinite(e.get<double>()))
        {
            fail("'" + key + "' must contain finite numbers only");
        }
        out.push_back(e.get<double>());
    }
    return out;
}

void read_problem_key(ExperimentConfig& c, const std::string& key, const json& v)
{
    if (key == "dimension")
    {
        c.dimension = count(v, key, 1);
    }
    else if (key == "radius")
    {
        c.radius = positive_number(v, key);
    }
    else if (key == "spectrum")
    {
        c.spectrum = number_list(v, key);
    }
    else if (key == "true_signal")
    {
        c.true_signal = number_list(v, key);
    }
    else if (key == "true_coefficient")
    {
        c.true_coefficient = number_list(v, key);
    }
    else if (key == "source")
    {
        c.source = number_list(v, key);
    }
    else if (key == "step_scale")
    {
        c.step_scale = positive_number(v, key);
    }
}

void read_problem(ExperimentConfig& c, const json& j)
{
    if (j.is_string())
    {
        c.problem = j.get<std::string>();
    }
    else if (j.is_object())
    {
        if (!j.contains("name") || !j["name"].is_string())
        {
            fail("'problem' object needs a string 'name'");
        }
        c.problem = j["name"].get<std::string>();
        for (const auto& [key, value] : j.items())
        {
            if (key == "name")
            {
                continue;
            }
            if (!kProblemKeys.count(key))
            {
                fail("unknown problem parameter '" + key + "'");
            }
            read_problem_key(c, key, value);
        }
    }
    else
    {
        fail("'problem' must be a name or an object with a 'name'");
    }
    const auto& names = problem_names();
    if (std::find(names.begin(), names.end(), c.problem) == names.end())
    {
        fail("unknown problem '" + c.problem
             + "' (expected quadratic, scalar-quadratic, autoconv or ode-param)");
    }
}

void read_stop(ExperimentConfig& c, const json& j)
{
    if (!j.is_object())
    {
        fail("'stop' must be an object");
    }
    for (const auto& [key, value] : j.items())
    {
        if (key == "c0")
        {
            c.stop_c0 = positive_number(value, "stop.c0");
        }
        else if (key == "kappa")
        {
            c.stop_kappa = positive_number(value, "stop.kappa");
            if (!(c.stop_kappa < 1.0))
            {
                fail("'stop.kappa' must lie in (0, 1)");
            }
        }
        else
        {
            fail("unknown key 'stop." + key + "'");
        }
    }
}

void read_diagnose(ExperimentConfig& c, const json& j)
{
    if (!j.is_object())
    {
        fail("'diagnose' must be an object");
    }
    for (const auto& [key, value] : j.items())
    {
        if (key == "gamma")
        {
            if (value.is_string() && value.get<std::string>() == "inf")
            {
                c.diagnose_gamma = Gamma::infinite();
            }
            else if (value.is_number() && value.get<double>() >= 0.0
                     && std::isfinite(value.get<double>()))
            {
                c.diagnose_gamma = Gamma::finite(value.get<double>());
            }
            else
            {
                fail("'diagnose.gamma' must be a number >= 0 or \"inf\"");
            }
        }
        else if (key == "tau_gamma")
        {
            c.diagnose_tau_gamma = positive_number(value, "diagnose.tau_gamma");
        }
        else
        {
            fail("unknown key 'diagnose." + key + "'");
        }
    }
}

template <typename Fn>
auto wrap_build(Fn&& fn)
{
    try
    {
        return fn();
    }
    catch (const ConfigError&)
    {
        throw;
    }
    catch (const Error& e)
    {
        throw ConfigError(std::string("invalid problem parameters: ") + e.what());
    }
}

void forbid(const ExperimentConfig& c, bool present, const char* key)
{
    if (present)
    {
        fail(std::string("'") + key + "' does not apply to problem '" + c.problem + "'");
    }
}

}  // namespace

ExperimentConfig parse_config(const json& j)
{
    if (!j.is_object())
    {
        fail("config must be a JSON object");
    }
    ExperimentConfig c;
    if (!j.contains("problem"))
    {
        fail("config needs a 'problem'");
    }
    for (const auto& [key, value] : j.items())
    {
        if (!kTopKeys.count(key))
        {
            fail("unknown config key '" + key + "'");
        }
    }
    for (const auto& [key, value] : j.items())
    {
        if (kProblemKeys.count(key))
        {
            read_problem_key(c, key, value);
        }
    }
    read_problem(c, j["problem"]);

    if (j.contains("noise_levels") && j.contains("data_noise_level"))
    {
        fail("give either 'noise_levels' or 'data_noise_level', not both");
    }
    if (j.contains("seeds") && j.contains("seed"))
    {
        fail("give either 'seeds' or 'seed', not both");
    }
    if (j.contains("noise_levels"))
    {
        c.noise_levels = number_list(j["noise_levels"], "noise_levels");
        for (double v : c.noise_levels)
        {
            if (!(v > 0.0))
            {
                fail("'noise_levels' must be positive");
            }
        }
    }
    if (j.contains("data_noise_level"))
    {
        c.noise_levels = {positive_number(j["data_noise_level"], "data_noise_level")};
    }
    if (j.contains("seeds"))
    {
        const json& s = j["seeds"];
        if (!s.is_array() || s.empty())
        {
            fail("'seeds' must be a non-empty array of integers");
        }
        c.seeds.clear();
        for (const json& e : s)
        {
            c.seeds.push_back(seed_value(e, "seeds"));
        }
    }
    if (j.contains("seed"))
    {
        c.seeds = {seed_value(j["seed"], "seed")};
    }
    if (j.contains("x0_offset"))
    {
        const json& x = j["x0_offset"];
        if (!(x.is_string() && x.get<std::string>() == "default"))
        {
            c.x0_offset = number_list(x, "x0_offset");
        }
    }
    if (j.contains("stop"))
    {
        read_stop(c, j["stop"]);
    }
    if (j.contains("condition_samples"))
    {
        c.condition_samples = count(j["condition_samples"], "condition_samples", 2);
    }
    if (j.contains("track_exact"))
    {
        if (!j["track_exact"].is_boolean())
        {
            fail("'track_exact' must be true or false");
        }
        c.track_exact = j["track_exact"].get<bool>();
    }
    if (j.contains("max_iter"))
    {
        c.max_iter = count(j["max_iter"], "max_iter", 0);
    }
    if (j.contains("output_dir"))
    {
        if (!j["output_dir"].is_string() || j["output_dir"].get<std::string>().empty())
        {
            fail("'output_dir' must be a non-empty string");
        }
        c.output_dir = j["output_dir"].get<std::string>();
    }
    if (j.contains("workers"))
    {
        c.workers = count(j["workers"], "workers", 1);
    }
    if (j.contains("diagnose"))
    {
        read_diagnose(c, j["diagnose"]);
    }
    if (j.contains("inject_fault"))
    {
        const json& f = j["inject_fault"];
        const auto& ids = lemma_ids();
        if (!f.is_string() || std::find(ids.begin(), ids.end(), f.get<std::string>()) == ids.end())
        {
            fail("'inject_fault' must name a check: descent, error_bound, "
                 "noisy_recursion, noisy_uniform, summability or divergence_recursion");
        }
        c.inject_fault = f.get<std::string>();
    }
    if (j.contains("prng"))
    {
        if (!j["prng"].is_string() || j["prng"].get<std::string>() != "splitmix64")
        {
            fail("'prng' must be \"splitmix64\", the only supported generator");
        }
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
    {
        fail("cannot read config file " + path.string());
    }
    json j;
    try
    {
        in >> j;
    }
    catch (const json::parse_error& e)
    {
        fail("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

void require_study_ladder(const ExperimentConfig& config)
{
    const auto& levels = config.noise_levels;
    if (levels.size() < 3)
    {
        fail("a convergence study needs at least 3 noise levels");
    }
    for (std::size_t i = 1; i < levels.size(); ++i)
    {
        if (!(levels[i] < levels[i - 1]))
        {
            fail("noise_levels must be strictly decreasing for a convergence study");
        }
    }
}

ProblemInstance build_problem(const ExperimentConfig& c)
{
    auto vec = [](const std::optional<std::vector<double>>& v) { return Vector(*v); };
    if (c.problem == "quadratic")
    {
        forbid(c, c.true_signal || c.true_coefficient || c.source,
               "true_signal/true_coefficient/source");
        const std::size_t n = c.dimension ? *c.dimension
                              : c.spectrum ? c.spectrum->size()
                                           : 10;
        const std::vector<double> spectrum =
            c.spectrum ? *c.spectrum : default_quadratic_spectrum(n);
        return wrap_build([&]
                          { return build_quadratic(n, spectrum, c.radius.value_or(2.0),
                                                   c.step_scale.value_or(1.0)); });
    }
    if (c.problem == "scalar-quadratic")
    {
        forbid(c, c.spectrum || c.true_signal || c.true_coefficient || c.source,
               "spectrum/true_signal/true_coefficient/source");
        if (c.dimension && *c.dimension != 1)
        {
            fail("problem 'scalar-quadratic' has dimension 1");
        }
        return wrap_build([&] {
            return build_scalar_quadratic_operator(c.radius.value_or(0.1), c.step_scale);
        });
    }
    if (c.problem == "autoconv")
    {
        forbid(c, c.spectrum || c.true_coefficient || c.source,
               "spectrum/true_coefficient/source");
        const std::size_t n = c.dimension ? *c.dimension
                              : c.true_signal ? c.true_signal->size()
                                              : 32;
        return wrap_build([&] {
            const Vector signal =
                c.true_signal ? vec(c.true_signal) : default_autoconvolution_signal(n);
            return build_autoconvolution(n, signal, c.radius.value_or(0.5), c.step_scale);
        });
    }
    forbid(c, c.spectrum || c.true_signal, "spectrum/true_signal");
    const std::size_t n = c.dimension ? *c.dimension
                          : c.true_coefficient ? c.true_coefficient->size()
                                               : 32;
    return wrap_build([&] {
        const Vector coefficient =
            c.true_coefficient ? vec(c.true_coefficient) : default_ode_coefficient(n);
        const Vector source = c.source ? vec(c.source) : default_ode_source(n);
        return build_ode_parameter_id(n, coefficient, source, c.radius.value_or(2.0),
                                      c.step_scale);
    });
}

Vector initial_guess(const ExperimentConfig& config, const ProblemInstance& problem)
{
    const BallSpec& ball = problem.ball();
    Vector offset = problem.default_x0_offset;
    if (config.x0_offset)
    {
        if (config.x0_offset->size() != ball.dimension())
        {
            fail("'x0_offset' has length " + std::to_string(config.x0_offset->size())
                 + " but the problem dimension is " + std::to_string(ball.dimension()));
        }
        offset = Vector(*config.x0_offset);
    }
    Vector x0 = ball.center() + offset;
    if (ball.escaped(x0))
    {
        std::ostringstream msg;
        msg << "initial guess x0 = x* + x0_offset lies outside the ball: |x0 - x*| = "
            << format_double(norm(offset)) << " > radius " << format_double(ball.radius())
            << "; the initial-guess smallness condition cannot hold";
        fail(msg.str());
    }
    return x0;
}

}  // namespace illposed
