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

#include "illposed/trace_io.hpp"

#include <cstdio>
#include <fstream>

#include "illposed/errors.hpp"

namespace illposed
{

using nlohmann::json;

namespace
{

json optional_number(const std::optional<double>& v)
{
    return v ? json(*v) : json(nullptr);
}

}  // namespace

json to_json(const Vector& v)
{
    return json(v.data());
}

Vector vector_from_json(const json& j)
{
    if (!j.is_array())
    {
        throw InvalidArgument("expected a JSON array of numbers");
    }
    std::vector<double> out;
    out.reserve(j.size());
    for (const json& e : j)
    {
        if (!e.is_number())
        {
            throw InvalidArgument("expected a JSON array of numbers");
        }
        out.push_back(e.get<double>());
    }
    return Vector(std::move(out));
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace)
{
    out << "k,err,J,Jdelta,grad_norm,inner_ek\n";
    for (std::size_t k = 0; k < trace.size(); ++k)
    {
        out << k << ',' << format_double(trace.errors[k]) << ',';
        if (!trace.noisy)
        {
            out << format_double(trace.values[k]) << ',';
        }
        else
        {
            if (trace.tracks_exact())
            {
                out << format_double(trace.exact_values[k]);
            }
            out << ',' << format_double(trace.values[k]);
        }
        out << ',' << format_double(trace.grad_norms[k]) << ','
            << format_double(trace.inner_products[k]) << '\n';
    }
}

json trace_to_json(const IterationTrace& trace, const TraceMetadata& meta)
{
    json j;
    j["problem"] = meta.problem;
    j["kind"] = meta.kind;
    if (trace.noisy)
    {
        j["noise_level"] = meta.noise_level;
        j["seed"] = meta.seed;
        j["delta"] = meta.delta;
    }
    j["stopped_at"] = trace.stopped_at;
    j["escaped_at"] = trace.escaped_at ? json(*trace.escaped_at) : json(nullptr);
    j["escape_point"] = trace.escape_point ? to_json(*trace.escape_point) : json(nullptr);
    json iterates = json::array();
    for (const Vector& x : trace.iterates)
    {
        iterates.push_back(to_json(x));
    }
    j["iterates"] = std::move(iterates);
    j["errors"] = trace.errors;
    j["values"] = trace.values;
    j["exact_values"] = trace.exact_values;
    j["grad_norms"] = trace.grad_norms;
    j["inner_products"] = trace.inner_products;
    return j;
}

json to_json(const LemmaCheckResult& r)
{
    json j;
    j["lemma_id"] = r.lemma_id;
    j["verdict"] = to_string(r.verdict);
    j["passed"] = r.passed();
    j["worst_margin"] = optional_number(r.worst_margin);
    j["witness_step"] = r.witness_step ? json(*r.witness_step) : json(nullptr);
    json context = json::object();
    for (const auto& [key, value] : r.context)
    {
        context[key] = value;
    }
    j["context"] = std::move(context);
    if (!r.note.empty())
    {
        j["note"] = r.note;
    }
    return j;
}

json to_json(const Witness& w)
{
    json points = json::array();
    for (const Vector& p : w.points)
    {
        points.push_back(to_json(p));
    }
    return {{"condition", w.condition},
            {"points", std::move(points)},
            {"measured", w.measured},
            {"threshold", w.threshold}};
}

json to_json(const ConditionReport& report)
{
    json j;
    j["samples"] = report.samples;
    j["gamma"] = report.gamma.is_infinite() ? json("inf") : json(report.gamma.value());
    j["beta_hat"] = optional_number(report.beta_hat);
    j["eta_weak_hat"] = report.eta_weak_hat;
    j["eta_strong_hat"] = report.eta_strong_hat;
    j["tau_gamma"] = report.tau_gamma;
    j["tau_hat"] = report.tau_hat;
    j["lipschitz_hat"] = report.lipschitz_hat;
    j["declared_lipschitz"] = report.declared_lipschitz;
    j["phi_coefficient_hat"] = report.phi_coefficient_hat;
    j["jacobian_sup_hat"] = report.jacobian_sup_hat;
    j["radial_monotonicity_passed"] = report.radial_monotonicity_passed;
    j["cone_implications_passed"] = report.cone_implications_passed;
    if (report.cone_pair)
    {
        j["cone_derived"] = {{"gamma", report.cone_pair->gamma},
                             {"beta", report.cone_pair->beta},
                             {"gamma_sup", report.cone_pair->gamma_sup}};
    }
    else
    {
        j["cone_derived"] = nullptr;
    }
    j["tau_lower_bound_from_cone"] = optional_number(report.tau_lower_bound_from_cone);
    json labels = json::object();
    for (const auto& [name, label] : report.labels)
    {
        labels[name] = label;
    }
    j["labels"] = std::move(labels);
    json profile = json::array();
    for (const BalanceRatioPoint& p : report.balance_profile)
    {
        profile.push_back(
            {{"ray", p.ray}, {"scale", p.scale}, {"ratio", optional_number(p.ratio)}});
    }
    j["balance_ratio_profile"] = std::move(profile);
    json witnesses = json::array();
    for (const Witness& w : report.witnesses)
    {
        witnesses.push_back(to_json(w));
    }
    j["witnesses"] = std::move(witnesses);
    return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path())
    {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec)
        {
            throw Error("cannot create directory " + path.parent_path().string()
                        + ": " + ec.message());
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
    {
        throw Error("cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out)
    {
        throw Error("failed writing " + path.string());
    }
}

std::string dump_json(const json& j)
{
    return j.dump(2) + "\n";
}

}  // namespace illposed
