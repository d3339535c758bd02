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

#include <filesystem>
#include <ostream>
#include <string>

#include <json.hpp>

#include "illposed/conditions.hpp"
#include "illposed/descent.hpp"
#include "illposed/lemmas.hpp"
#include "illposed/linalg.hpp"

namespace illposed
{

nlohmann::json to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);

/// %.17g, so a value survives a text round trip bit for bit.
std::string format_double(double v);

// One row per iterate: k,err,J,Jdelta,grad_norm,inner_ek.
// For an exact trace J is J(x_k) and Jdelta is empty; for a noisy trace
// Jdelta is J^delta(x_k) and J is empty unless exact values were tracked.
void write_trace_csv(std::ostream& out, const IterationTrace& trace);

struct TraceMetadata
{
    std::string problem;
    std::string kind;  // "exact" or "noisy"
    double noise_level = 0.0;
    std::uint64_t seed = 0;
    double delta = 0.0;
};

nlohmann::json trace_to_json(const IterationTrace& trace, const TraceMetadata& meta);

nlohmann::json to_json(const LemmaCheckResult& r);
nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const ConditionReport& report);

/// Writes `text` to `path`, creating parent directories. Throws Error on
/// I/O failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Pretty-printed JSON with a trailing newline.
std::string dump_json(const nlohmann::json& j);

}  // namespace illposed
