// Copyright 2026 The weaktension Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Configuration-driven scenario runner. A scenario is one JSON document; see
// README.md for the schema. Builtin scenarios cover every worked example.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weaktension/hilbert.hpp"
#include "weaktension/output_table.hpp"

namespace weaktension {

enum class ScenarioKind { triple, response_sweep, tension_sweep, cv, montecarlo, reconstruct };
enum class OutputFormat { csv, json };

std::string_view to_string(ScenarioKind kind) noexcept;
std::string_view to_string(OutputFormat format) noexcept;

using AmplitudeList = std::vector<Complex>;

struct ObservableSpec {
    std::optional<std::string> preset;  ///< pauli_x / pauli_y / pauli_z
    std::vector<double> eigenvalues;
    std::vector<AmplitudeList> basis;
};

/// Either a convex mixture of pure states or explicit matrix rows.
struct DensitySpec {
    std::vector<double> weights;
    std::vector<AmplitudeList> states;
    std::vector<AmplitudeList> matrix;
};

struct ScenarioParameters {
    std::optional<std::vector<double>> phis;
    std::optional<std::vector<double>> angles;
    std::optional<double> mass, tau, hbar, x_max;
    std::optional<std::int64_t> grid_points;
    std::optional<std::uint64_t> n, seed;
    std::optional<std::vector<double>> eps, w;
    std::optional<double> delta_phi;
    std::optional<double> h;
    std::optional<std::uint64_t> workers;
};

struct OutputSpec {
    std::string path;  ///< empty: standard output
    OutputFormat format = OutputFormat::csv;
};

struct ScenarioConfig {
    std::string name;
    ScenarioKind kind = ScenarioKind::triple;
    std::map<std::string, AmplitudeList> states;  ///< raw amplitudes as written
    std::optional<ObservableSpec> observable;
    std::optional<DensitySpec> rho;
    ScenarioParameters parameters;
    OutputSpec output;
};

/// Parses and validates a scenario document. Syntax errors raise
/// Errc::ParseError with line and column; every semantic problem found is
/// listed, one per line with its field path, in a single Errc::ValidationError.
ScenarioConfig parse_config(std::string_view text);

/// Canonical JSON text. Presets for states and grid shorthands are expanded,
/// so serialize(parse(serialize(parse(t)))) == serialize(parse(t)).
std::string serialize(const ScenarioConfig& config);

/// Expands "linspace(a, b, n)"; a and b may use pi ("-pi", "2*pi", "pi/4").
std::vector<double> parse_grid_shorthand(std::string_view text);

/// Runs a validated config. Engine failures are rethrown as Error with the
/// scenario name prepended; the code is preserved.
OutputTable run(const ScenarioConfig& config);

std::string render(const OutputTable& table, OutputFormat format);

struct BuiltinScenario {
    std::string name;
    std::string description;
    std::string text;  ///< the scenario document
};

std::vector<BuiltinScenario> list_scenarios();
/// Throws Errc::ValidationError for unknown names.
ScenarioConfig builtin_scenario(std::string_view name);

}  // namespace weaktension
