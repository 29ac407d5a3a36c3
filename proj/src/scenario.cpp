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

#include "weaktension/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <regex>
#include <set>

#include <json.hpp>

#include "weaktension/errors.hpp"
#include "weaktension/free_particle.hpp"
#include "weaktension/numeric_policy.hpp"
#include "weaktension/tension.hpp"
#include "weaktension/weak_engine.hpp"
#include "weaktension/weak_measurement.hpp"

namespace weaktension {

using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultTrials = 1'000'000;
constexpr double kDefaultCoupling = 0.01;
constexpr double kDefaultDeltaPhi = 0.01;

const std::map<std::string, ScenarioKind, std::less<>> kKinds = {
    {"triple", ScenarioKind::triple},         {"response_sweep", ScenarioKind::response_sweep},
    {"tension_sweep", ScenarioKind::tension_sweep}, {"cv", ScenarioKind::cv},
    {"montecarlo", ScenarioKind::montecarlo}, {"reconstruct", ScenarioKind::reconstruct},
};

AmplitudeList preset_state(std::string_view name) {
    const double r = std::numbers::sqrt2 / 2.0;
    if (name == "zero") return {1.0, 0.0};
    if (name == "one") return {0.0, 1.0};
    if (name == "plus") return {r, r};
    if (name == "minus") return {r, -r};
    if (name == "plus_i") return {r, Complex(0.0, r)};
    if (name == "minus_i") return {r, Complex(0.0, -r)};
    return {};
}

// ------------------------------------------------------------------ parsing

struct Issues {
    std::vector<std::string> list;
    void add(const std::string& path, const std::string& message) { list.push_back(path + ": " + message); }
};

std::optional<double> read_number(const json& node, const std::string& path, Issues& issues) {
    if (!node.is_number()) {
        issues.add(path, "expected a number");
        return std::nullopt;
    }
    const double value = node.get<double>();
    if (!std::isfinite(value)) {
        issues.add(path, "must be finite");
        return std::nullopt;
    }
    return value;
}

std::optional<Complex> read_complex(const json& node, const std::string& path, Issues& issues) {
    if (node.is_number()) {
        return read_number(node, path, issues);
    }
    if (!node.is_array() || node.size() != 2) {
        issues.add(path, "expected a complex number as [re, im]");
        return std::nullopt;
    }
    const auto re = read_number(node[0], path + "[0]", issues);
    const auto im = read_number(node[1], path + "[1]", issues);
    if (!re || !im) return std::nullopt;
    return Complex(*re, *im);
}

std::optional<AmplitudeList> read_amplitudes(const json& node, const std::string& path, Issues& issues) {
    if (node.is_string()) {
        AmplitudeList preset = preset_state(node.get<std::string>());
        if (preset.empty()) {
            issues.add(path, "unknown state preset '" + node.get<std::string>() + "'");
            return std::nullopt;
        }
        return preset;
    }
    if (!node.is_array()) {
        issues.add(path, "expected a list of amplitudes or a preset name");
        return std::nullopt;
    }
    AmplitudeList out;
    bool ok = true;
    for (std::size_t k = 0; k < node.size(); ++k) {
        const auto z = read_complex(node[k], path + "[" + std::to_string(k) + "]", issues);
        if (z) out.push_back(*z);
        else ok = false;
    }
    if (!ok) return std::nullopt;
    if (out.size() < 2) {
        issues.add(path, "a state needs at least two amplitudes");
        return std::nullopt;
    }
    double norm = 0.0;
    for (const Complex z : out) norm += std::norm(z);
    if (!(norm > 0.0)) {
        issues.add(path, "state is not normalizable (all amplitudes zero)");
        return std::nullopt;
    }
    return out;
}

std::optional<std::vector<double>> read_grid(const json& node, const std::string& path, Issues& issues) {
    if (node.is_string()) {
        try {
            return parse_grid_shorthand(node.get<std::string>());
        } catch (const Error& e) {
            issues.add(path, e.what());
            return std::nullopt;
        }
    }
    if (!node.is_array()) {
        issues.add(path, "expected a list of numbers or a linspace(...) string");
        return std::nullopt;
    }
    std::vector<double> out;
    for (std::size_t k = 0; k < node.size(); ++k) {
        const auto v = read_number(node[k], path + "[" + std::to_string(k) + "]", issues);
        if (!v) return std::nullopt;
        out.push_back(*v);
    }
    return out;
}

std::optional<std::uint64_t> read_unsigned(const json& node, const std::string& path, Issues& issues) {
    if (!node.is_number_integer() || (node.is_number_integer() && !node.is_number_unsigned() && node.get<std::int64_t>() < 0)) {
        issues.add(path, "expected a non-negative integer");
        return std::nullopt;
    }
    return node.get<std::uint64_t>();
}

void reject_unknown(const json& object, const std::set<std::string>& known, const std::string& path,
                    Issues& issues) {
    for (const auto& item : object.items()) {
        if (!known.contains(item.key())) {
            issues.add(path.empty() ? item.key() : path + "." + item.key(), "unknown field");
        }
    }
}

std::optional<ObservableSpec> read_observable(const json& node, Issues& issues) {
    ObservableSpec spec;
    if (node.is_string()) {
        const std::string name = node.get<std::string>();
        if (name != "pauli_x" && name != "pauli_y" && name != "pauli_z") {
            issues.add("observable", "unknown preset '" + name + "'");
            return std::nullopt;
        }
        spec.preset = name;
        return spec;
    }
    if (!node.is_object()) {
        issues.add("observable", "expected a preset name or {eigenvalues, basis}");
        return std::nullopt;
    }
    reject_unknown(node, {"eigenvalues", "basis"}, "observable", issues);
    if (!node.contains("eigenvalues") || !node.contains("basis")) {
        issues.add("observable", "explicit observables need both 'eigenvalues' and 'basis'");
        return std::nullopt;
    }
    const auto eigenvalues = read_grid(node["eigenvalues"], "observable.eigenvalues", issues);
    if (!node["basis"].is_array()) {
        issues.add("observable.basis", "expected a list of eigenvectors");
        return std::nullopt;
    }
    for (std::size_t m = 0; m < node["basis"].size(); ++m) {
        const auto v = read_amplitudes(node["basis"][m], "observable.basis[" + std::to_string(m) + "]", issues);
        if (!v) return std::nullopt;
        spec.basis.push_back(*v);
    }
    if (!eigenvalues) return std::nullopt;
    spec.eigenvalues = *eigenvalues;
    if (spec.eigenvalues.size() != spec.basis.size()) {
        issues.add("observable", "needs one eigenvalue per eigenvector");
        return std::nullopt;
    }
    for (std::size_t m = 0; m < spec.basis.size(); ++m) {
        if (spec.basis[m].size() != spec.basis.size()) {
            issues.add("observable.basis[" + std::to_string(m) + "]",
                       "dimension " + std::to_string(spec.basis[m].size()) + " but the basis has " +
                           std::to_string(spec.basis.size()) + " vectors");
            return std::nullopt;
        }
    }
    return spec;
}

std::optional<DensitySpec> read_density(const json& node, Issues& issues) {
    DensitySpec spec;
    if (!node.is_object()) {
        issues.add("rho", "expected {mixture: [...]} or {matrix: [...]}");
        return std::nullopt;
    }
    reject_unknown(node, {"mixture", "matrix"}, "rho", issues);
    if (node.contains("mixture") == node.contains("matrix")) {
        issues.add("rho", "give exactly one of 'mixture' or 'matrix'");
        return std::nullopt;
    }
    if (node.contains("mixture")) {
        const json& items = node["mixture"];
        if (!items.is_array() || items.empty()) {
            issues.add("rho.mixture", "expected a non-empty list of {weight, state}");
            return std::nullopt;
        }
        for (std::size_t k = 0; k < items.size(); ++k) {
            const std::string path = "rho.mixture[" + std::to_string(k) + "]";
            if (!items[k].is_object() || !items[k].contains("weight") || !items[k].contains("state")) {
                issues.add(path, "expected {weight, state}");
                return std::nullopt;
            }
            reject_unknown(items[k], {"weight", "state"}, path, issues);
            const auto weight = read_number(items[k]["weight"], path + ".weight", issues);
            const auto state = read_amplitudes(items[k]["state"], path + ".state", issues);
            if (!weight || !state) return std::nullopt;
            if (*weight < 0.0) {
                issues.add(path + ".weight", "must be non-negative");
                return std::nullopt;
            }
            spec.weights.push_back(*weight);
            spec.states.push_back(*state);
        }
        return spec;
    }
    const json& rows = node["matrix"];
    if (!rows.is_array()) {
        issues.add("rho.matrix", "expected a list of rows");
        return std::nullopt;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::string path = "rho.matrix[" + std::to_string(r) + "]";
        if (!rows[r].is_array() || rows[r].size() != rows.size()) {
            issues.add(path, "matrix must be square");
            return std::nullopt;
        }
        AmplitudeList row;
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            const auto z = read_complex(rows[r][c], path + "[" + std::to_string(c) + "]", issues);
            if (!z) return std::nullopt;
            row.push_back(*z);
        }
        spec.matrix.push_back(row);
    }
    return spec;
}

void read_parameters(const json& node, ScenarioParameters& p, Issues& issues) {
    if (!node.is_object()) {
        issues.add("parameters", "expected an object");
        return;
    }
    reject_unknown(node,
                   {"phis", "angles", "mass", "tau", "hbar", "x_max", "grid_points", "n", "seed", "eps",
                    "w", "delta_phi", "h", "workers"},
                   "parameters", issues);
    auto number = [&](const char* key, std::optional<double>& slot) {
        if (node.contains(key)) slot = read_number(node[key], std::string("parameters.") + key, issues);
    };
    auto grid = [&](const char* key, std::optional<std::vector<double>>& slot) {
        if (node.contains(key)) slot = read_grid(node[key], std::string("parameters.") + key, issues);
    };
    auto count = [&](const char* key, std::optional<std::uint64_t>& slot) {
        if (node.contains(key)) slot = read_unsigned(node[key], std::string("parameters.") + key, issues);
    };
    grid("phis", p.phis);
    grid("angles", p.angles);
    number("mass", p.mass);
    number("tau", p.tau);
    number("hbar", p.hbar);
    number("x_max", p.x_max);
    number("delta_phi", p.delta_phi);
    number("h", p.h);
    grid("eps", p.eps);
    grid("w", p.w);
    count("n", p.n);
    count("seed", p.seed);
    count("workers", p.workers);
    if (node.contains("grid_points")) {
        if (const auto v = read_unsigned(node["grid_points"], "parameters.grid_points", issues)) {
            p.grid_points = static_cast<std::int64_t>(*v);
        }
    }
}

StateVector make_state(const AmplitudeList& amplitudes) {
    return StateVector(Vector::Map(amplitudes.data(), static_cast<Index>(amplitudes.size())));
}

SpectralObservable make_observable(const ObservableSpec& spec) {
    if (spec.preset) {
        return observables::preset(*spec.preset);
    }
    std::vector<StateVector> basis;
    for (const auto& v : spec.basis) basis.push_back(make_state(v));
    return SpectralObservable(spec.eigenvalues, std::move(basis));
}

DensityOperator make_density(const DensitySpec& spec) {
    if (!spec.matrix.empty()) {
        const Index n = static_cast<Index>(spec.matrix.size());
        Matrix m(n, n);
        for (Index r = 0; r < n; ++r) {
            for (Index c = 0; c < n; ++c) m(r, c) = spec.matrix[r][c];
        }
        return DensityOperator(std::move(m));
    }
    std::vector<StateVector> states;
    for (const auto& v : spec.states) states.push_back(make_state(v));
    return DensityOperator::mixture(spec.weights, states);
}

void validate_semantics(const ScenarioConfig& config, Issues& issues) {
    auto require_state = [&](const char* name) {
        if (!config.states.contains(name)) issues.add(std::string("states.") + name, "required for kind " + std::string(to_string(config.kind)));
    };
    const bool needs_observable = config.kind != ScenarioKind::cv;
    if (needs_observable && !config.observable) {
        issues.add("observable", "required for kind " + std::string(to_string(config.kind)));
    }
    switch (config.kind) {
        case ScenarioKind::triple:
        case ScenarioKind::montecarlo:
            require_state("i");
            require_state("f");
            break;
        case ScenarioKind::tension_sweep:
            require_state("i");
            require_state("f");
            if (!config.parameters.angles) issues.add("parameters.angles", "required for kind tension_sweep");
            break;
        case ScenarioKind::response_sweep:
            if (!config.states.contains("i") && !config.rho) issues.add("states.i", "give an initial state 'i' or 'rho'");
            if (config.states.contains("i") && config.rho) issues.add("rho", "give either states.i or rho, not both");
            require_state("f");
            if (!config.parameters.phis) issues.add("parameters.phis", "required for kind response_sweep");
            break;
        case ScenarioKind::reconstruct:
            require_state("i");
            break;
        case ScenarioKind::cv:
            break;
    }
    if (config.rho && config.kind != ScenarioKind::response_sweep) {
        issues.add("rho", "only response_sweep accepts a density operator");
    }

    std::optional<SpectralObservable> obs;
    if (config.observable) {
        try {
            obs = make_observable(*config.observable);
            if (!obs->is_valid()) {
                issues.add("observable", "eigenbasis is not orthonormal and complete (orthonormality violation " +
                                             format_double(obs->validation().orthonormality_violation) + ")");
            }
        } catch (const Error& e) {
            issues.add("observable", e.what());
        }
    }
    if (obs) {
        for (const auto& [name, amplitudes] : config.states) {
            if (static_cast<Index>(amplitudes.size()) != obs->dim()) {
                issues.add("states." + name, "dimension " + std::to_string(amplitudes.size()) +
                                                 " does not match the observable dimension " +
                                                 std::to_string(obs->dim()));
            }
        }
        if (config.kind == ScenarioKind::tension_sweep && obs->dim() != 2) {
            issues.add("observable", "tension_sweep needs a qubit observable");
        }
    }
    if (config.rho) {
        try {
            const DensityOperator rho = make_density(*config.rho);
            if (obs && rho.dim() != obs->dim()) {
                issues.add("rho", "dimension does not match the observable");
            }
        } catch (const Error& e) {
            issues.add("rho", e.what());
        }
    }
    const auto& p = config.parameters;
    if ((p.eps.has_value()) != (p.w.has_value())) {
        issues.add("parameters", "'eps' and 'w' must be given together");
    } else if (p.eps && p.eps->size() != p.w->size()) {
        issues.add("parameters.eps", "needs one coupling per weight in 'w'");
    }
}

// ------------------------------------------------------------- serializing

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json amplitudes_json(const AmplitudeList& v) {
    json out = json::array();
    for (const Complex z : v) out.push_back(complex_json(z));
    return out;
}

// ------------------------------------------------------------------ running

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string policy_summary() {
    const NumericPolicy& p = numeric_policy();
    char buffer[200];
    std::snprintf(buffer, sizeof buffer,
                  "construction_tol=%g;validation_tol=%g;psd_tol=%g;overlap_floor=%g;magnitude_floor=%g",
                  p.construction_tol, p.validation_tol, p.psd_tol, p.overlap_floor, p.magnitude_floor);
    return buffer;
}

Cell half_area_cell(const StateVector& i, const StateVector& m, const StateVector& f) {
    if (i.dim() != 2) return std::monostate{};
    try {
        return qubit_tension_consistency(i, m, f).half_area;
    } catch (const Error&) {
        return std::monostate{};
    }
}

void run_triple(const ScenarioConfig& config, OutputTable& table) {
    const StateVector i = make_state(config.states.at("i"));
    const StateVector f = make_state(config.states.at("f"));
    const SpectralObservable obs = make_observable(*config.observable);
    const WeakConditionalDistribution dist = weak_conditional(i, f, obs);
    const ActionProfile actions = action_profile(dist);
    const Complex value = weak_value(i, f, obs);

    table.columns = {"m", "eigenvalue", "re_p", "im_p", "abs_p", "action", "action_defined",
                     "tension", "class", "degenerate", "half_area"};
    for (Index m = 0; m < obs.dim(); ++m) {
        const auto k = static_cast<std::size_t>(m);
        const Complex p = dist.values[k];
        const TensionReport tension = logical_tension(i, obs.eigenvector(m), f);
        table.rows.push_back({static_cast<std::int64_t>(m), obs.eigenvalue(m), p.real(), p.imag(), std::abs(p),
                              actions.actions[k], static_cast<bool>(actions.defined_mask[k]), tension.tension,
                              std::string(to_string(tension.magnitude_class)), tension.degenerate,
                              half_area_cell(i, obs.eigenvector(m), f)});
    }
    table.add_metadata("base_probability", dist.base_probability);
    table.add_metadata("weak_value_re", value.real());
    table.add_metadata("weak_value_im", value.imag());
    table.add_metadata("sum_p_re", dist.sum().real());
    table.add_metadata("sum_p_im", dist.sum().imag());
    table.add_metadata("max_overlap_probability", max_overlap_probability(dist));
    const Matrix u = optimal_unitary(dist, obs);
    table.add_metadata("optimal_unitary_probability",
                       std::norm(f.amplitudes().dot(u * i.amplitudes())));
    const ImaginaryResponse response =
        imaginary_response_check(i, f, obs, config.parameters.h.value_or(kDefaultDerivativeStep));
    table.add_metadata("imag_response_finite_diff", response.finite_diff);
    table.add_metadata("imag_response_weak", response.weak_imag);
}

void run_response_sweep(const ScenarioConfig& config, OutputTable& table) {
    const StateVector f = make_state(config.states.at("f"));
    const SpectralObservable obs = make_observable(*config.observable);
    const std::vector<double>& phis = *config.parameters.phis;
    ResponseCurve curve;
    if (config.rho) {
        curve = mixed_response_bound_check(make_density(*config.rho), f, obs, phis);
        table.add_metadata("source", std::string("mixed"));
    } else {
        curve = response_curve(make_state(config.states.at("i")), f, obs, phis);
        table.add_metadata("source", std::string("pure"));
    }
    table.columns = {"phi", "predicted", "direct", "satisfied"};
    for (std::size_t k = 0; k < curve.phis.size(); ++k) {
        table.rows.push_back({curve.phis[k], curve.predicted[k], curve.direct[k], static_cast<bool>(curve.satisfied[k])});
    }
    table.add_metadata("max_abs_difference", curve.max_abs_difference());
    table.add_metadata("all_satisfied", curve.all_satisfied());
}

void run_tension_sweep(const ScenarioConfig& config, OutputTable& table) {
    const StateVector i = make_state(config.states.at("i"));
    const StateVector f = make_state(config.states.at("f"));
    const SpectralObservable obs = make_observable(*config.observable);
    table.columns = {"angle", "tension_m0", "tension_m1", "difference", "half_area_m0", "half_area_m1",
                     "re_p_m0", "re_p_m1", "degenerate"};
    for (const double angle : *config.parameters.angles) {
        const StateVector rotated = evolve(i, obs, UnitaryParameter(angle));
        const TensionReport t0 = logical_tension(rotated, obs.eigenvector(0), f);
        const TensionReport t1 = logical_tension(rotated, obs.eigenvector(1), f);
        const bool degenerate = t0.degenerate || t1.degenerate;
        std::vector<Cell> row{angle, t0.tension, t1.tension,
                              orthogonal_pair_tension_difference(rotated, f, obs),
                              half_area_cell(rotated, obs.eigenvector(0), f),
                              half_area_cell(rotated, obs.eigenvector(1), f)};
        if (transition_probability(rotated, f) > numeric_policy().overlap_floor) {
            const WeakConditionalDistribution dist = weak_conditional(rotated, f, obs);
            row.emplace_back(dist.values[0].real());
            row.emplace_back(dist.values[1].real());
        } else {
            row.emplace_back(std::monostate{});
            row.emplace_back(std::monostate{});
        }
        row.emplace_back(degenerate);
        table.rows.push_back(std::move(row));
    }
}

void run_cv(const ScenarioConfig& config, OutputTable& table) {
    const auto& p = config.parameters;
    const FreeParticleScenario s =
        build_scenario(p.mass.value_or(1.0), p.tau.value_or(1.0), p.hbar.value_or(1.0), p.x_max.value_or(3.0),
                       static_cast<int>(p.grid_points.value_or(601)));
    const ActionCurve action = action_curve(s);
    const std::vector<double> dp = momentum_difference_profile(s);
    const std::vector<Complex> grid_route = grid_weak_density(s);
    table.columns = {"x", "re_p", "im_p", "abs_p", "s_wrapped", "s_unwrapped", "dp"};
    double worst_ratio = 0.0;
    for (std::size_t k = 0; k < s.grid.size(); ++k) {
        const Complex density = weak_density(s, s.grid[k]);
        worst_ratio = std::max(worst_ratio, std::abs(density / grid_route[k] - 1.0));
        table.rows.push_back({s.grid[k], density.real(), density.imag(), std::abs(density), action.wrapped[k],
                              action.unwrapped[k], dp[k]});
    }
    table.add_metadata("chirp_rate", s.chirp_rate());
    table.add_metadata("dx", s.dx);
    table.add_metadata("phase_at_zero", principal_arg(weak_density(s, 0.0)));
    table.add_metadata("grid_ratio_max_error", worst_ratio);
    table.add_metadata("grid_ratio_tolerance", grid_ratio_tolerance(s));
    const Complex partial = density_normalization_check(s, s.x_max);
    table.add_metadata("normalization_partial_re", partial.real());
    table.add_metadata("normalization_partial_im", partial.imag());
}

void run_montecarlo(const ScenarioConfig& config, OutputTable& table) {
    const auto& p = config.parameters;
    const StateVector i = make_state(config.states.at("i"));
    const StateVector f = make_state(config.states.at("f"));
    const SpectralObservable obs = make_observable(*config.observable);
    const MeterModel meter = p.eps ? MeterModel(*p.w, *p.eps) : MeterModel::symmetric(kDefaultCoupling);
    const std::uint64_t n = p.n.value_or(kDefaultTrials);
    const std::uint64_t seed = p.seed.value_or(1);
    const unsigned workers = static_cast<unsigned>(std::max<std::uint64_t>(1, p.workers.value_or(1)));

    const Complex oracle = weak_value(i, f, obs);
    const PostselectedCounts counts = simulate_trials(i, f, obs, meter, n, seed, workers);
    const EstimateReport real = estimate_real_weak_value(counts, meter);
    const EstimateReport imag = estimate_imag_weak_value(i, f, obs, p.delta_phi.value_or(kDefaultDeltaPhi), n, seed);

    table.columns = {"scenario", "quantity", "estimate", "std_error", "oracle", "z_score"};
    auto z = [](const EstimateReport& r, double truth) {
        return r.std_error > 0.0 ? (r.estimate - truth) / r.std_error : 0.0;
    };
    table.rows.push_back({config.name, std::string("re_weak_value"), real.estimate, real.std_error, oracle.real(),
                          z(real, oracle.real())});
    table.rows.push_back({config.name, std::string("im_weak_value"), imag.estimate, imag.std_error, oracle.imag(),
                          z(imag, oracle.imag())});
    table.add_metadata("seed", static_cast<std::int64_t>(seed));
    table.add_metadata("n_total", static_cast<std::int64_t>(counts.n_total));
    table.add_metadata("n_postselected", static_cast<std::int64_t>(counts.n_postselected));
}

void run_reconstruct(const ScenarioConfig& config, OutputTable& table) {
    const StateVector i = make_state(config.states.at("i"));
    const SpectralObservable obs = make_observable(*config.observable);
    const std::vector<Complex> raw = reconstruct_wavefunction(i, obs);
    const ReconstructionReport report = compare_reconstruction(raw, i, obs);
    table.columns = {"m", "re_raw", "im_raw", "re_reconstructed", "im_reconstructed", "re_true", "im_true"};
    for (std::size_t m = 0; m < raw.size(); ++m) {
        table.rows.push_back({static_cast<std::int64_t>(m), raw[m].real(), raw[m].imag(), report.aligned[m].real(),
                              report.aligned[m].imag(), report.reference[m].real(), report.reference[m].imag()});
    }
    table.add_metadata("fidelity", report.fidelity);
}

// ----------------------------------------------------------------- builtins

const std::vector<BuiltinScenario>& builtins() {
    static const std::vector<BuiltinScenario> list = {
        {"octant", "p(m|if), weak value, actions and tensions for i=|+i>, f=|+>, Pauli-Z",
         R"json({"name": "octant", "kind": "triple", "states": {"i": "plus_i", "f": "plus"}, "observable": "pauli_z"})json"},
        {"octant_response", "predicted vs direct response of the octant triple over [-2pi, 2pi]",
         R"json({"name": "octant_response", "kind": "response_sweep", "states": {"i": "plus_i", "f": "plus"},
             "observable": "pauli_z", "parameters": {"phis": "linspace(-2*pi, 2*pi, 101)"}})json"},
        {"mixed_halfqubit", "maximally mixed qubit against f=|+>: direct response stays above the prediction",
         R"json({"name": "mixed_halfqubit", "kind": "response_sweep", "states": {"f": "plus"},
             "rho": {"mixture": [{"weight": 0.5, "state": "zero"}, {"weight": 0.5, "state": "one"}]},
             "observable": "pauli_z", "parameters": {"phis": "linspace(-pi, pi, 101)"}})json"},
        {"octant_tension_sweep", "tension of i rotated about the z axis against f=|+>",
         R"json({"name": "octant_tension_sweep", "kind": "tension_sweep", "states": {"i": "plus_i", "f": "plus"},
             "observable": "pauli_z", "parameters": {"angles": "linspace(-pi, pi, 73)"}})json"},
        {"free_particle_default", "chirped free-particle states, m = tau = hbar = 1 on [-3, 3] with 601 points",
         R"json({"name": "free_particle_default", "kind": "cv",
             "parameters": {"mass": 1, "tau": 1, "hbar": 1, "x_max": 3, "grid_points": 601}})json"},
        {"montecarlo_octant", "simulated weak measurement and weak unitary response for the octant triple",
         R"json({"name": "montecarlo_octant", "kind": "montecarlo", "states": {"i": "plus_i", "f": "plus"},
             "observable": "pauli_z",
             "parameters": {"n": 1000000, "seed": 20110615, "eps": [0.01, -0.01], "w": [0.5, 0.5], "delta_phi": 0.01}})json"},
        {"reconstruct_plus_i", "wavefunction of |+i> read off p(m|if) with a uniform post-selection",
         R"json({"name": "reconstruct_plus_i", "kind": "reconstruct", "states": {"i": "plus_i"}, "observable": "pauli_z"})json"},
        {"reconstruct_qutrit", "qutrit wavefunction reconstruction in the computational basis",
         R"json({"name": "reconstruct_qutrit", "kind": "reconstruct", "states": {"i": [[0.6, 0], [0, 0.48], [-0.36, 0.52]]},
             "observable": {"eigenvalues": [1, 0, -1], "basis": [[[1, 0], [0, 0], [0, 0]], [[0, 0], [1, 0], [0, 0]], [[0, 0], [0, 0], [1, 0]]]}})json"},
    };
    return list;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) noexcept {
    for (const auto& [name, k] : kKinds) {
        if (k == kind) return name;
    }
    return "unknown";
}

std::string_view to_string(OutputFormat format) noexcept { return format == OutputFormat::json ? "json" : "csv"; }

std::vector<double> parse_grid_shorthand(std::string_view text) {
    static const std::regex pattern(R"(^\s*linspace\s*\(\s*([^,]+?)\s*,\s*([^,]+?)\s*,\s*(\d+)\s*\)\s*$)");
    static const std::regex term(
        R"(^([+-])?\s*(?:(\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)\s*(\*?\s*pi)?|(pi))\s*(?:/\s*(\d+(?:\.\d*)?))?$)");
    // Accept the typographic minus and pi as well as their ASCII spellings.
    std::string input(text);
    for (const auto& [from, to] : {std::pair<std::string_view, std::string_view>{"\u2212", "-"}, {"\u03c0", "pi"}}) {
        for (std::size_t at = input.find(from); at != std::string::npos; at = input.find(from, at + to.size())) {
            input.replace(at, from.size(), to);
        }
    }
    std::smatch match;
    if (!std::regex_match(input, match, pattern)) {
        throw Error(Errc::ValidationError, "expected linspace(start, stop, count), got '" + input + "'");
    }
    auto value = [&](const std::string& expr) {
        std::smatch t;
        if (!std::regex_match(expr, t, term)) {
            throw Error(Errc::ValidationError, "cannot read grid endpoint '" + expr + "'");
        }
        double v = 1.0;
        if (t[2].matched) v = std::stod(t[2].str());
        if (t[3].matched || t[4].matched) v *= std::numbers::pi;
        if (t[5].matched) v /= std::stod(t[5].str());
        return t[1].matched && t[1].str() == "-" ? -v : v;
    };
    const double start = value(match[1].str());
    const double stop = value(match[2].str());
    const long count = std::stol(match[3].str());
    if (count < 1) {
        throw Error(Errc::ValidationError, "linspace needs at least one sample");
    }
    std::vector<double> out(static_cast<std::size_t>(count));
    if (count == 1) {
        out[0] = start;
        return out;
    }
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (long k = 0; k < count; ++k) {
        out[static_cast<std::size_t>(k)] = start + step * static_cast<double>(k);
    }
    out.back() = stop;
    return out;
}

ScenarioConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // Translate the byte offset into a line and column.
        const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
        const std::size_t line_start = text.rfind('\n', offset == 0 ? 0 : offset - 1);
        const std::size_t column = line_start == std::string_view::npos ? offset + 1 : offset - line_start;
        throw Error(Errc::ParseError,
                    "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw Error(Errc::ParseError, "line 1, column 1: a scenario must be a JSON object");
    }

    Issues issues;
    ScenarioConfig config;
    reject_unknown(doc, {"name", "kind", "states", "observable", "rho", "parameters", "output"}, "", issues);
    if (doc.contains("name")) {
        if (doc["name"].is_string()) config.name = doc["name"].get<std::string>();
        else issues.add("name", "expected a string");
    }
    if (!doc.contains("kind") || !doc["kind"].is_string()) {
        issues.add("kind", "required; one of triple, response_sweep, tension_sweep, cv, montecarlo, reconstruct");
    } else if (const auto it = kKinds.find(doc["kind"].get<std::string>()); it != kKinds.end()) {
        config.kind = it->second;
    } else {
        issues.add("kind", "unknown kind '" + doc["kind"].get<std::string>() + "'");
    }
    if (config.name.empty()) config.name = std::string(to_string(config.kind));

    if (doc.contains("states")) {
        if (!doc["states"].is_object()) {
            issues.add("states", "expected an object of named states");
        } else {
            for (const auto& item : doc["states"].items()) {
                if (auto v = read_amplitudes(item.value(), "states." + item.key(), issues)) {
                    config.states.emplace(item.key(), std::move(*v));
                }
            }
        }
    }
    if (doc.contains("observable")) config.observable = read_observable(doc["observable"], issues);
    if (doc.contains("rho")) config.rho = read_density(doc["rho"], issues);
    if (doc.contains("parameters")) read_parameters(doc["parameters"], config.parameters, issues);
    if (doc.contains("output")) {
        const json& out = doc["output"];
        if (!out.is_object()) {
            issues.add("output", "expected {path, format}");
        } else {
            reject_unknown(out, {"path", "format"}, "output", issues);
            if (out.contains("path")) {
                if (out["path"].is_string()) config.output.path = out["path"].get<std::string>();
                else issues.add("output.path", "expected a string");
            }
            if (out.contains("format")) {
                const std::string format = out["format"].is_string() ? out["format"].get<std::string>() : "";
                if (format == "csv") config.output.format = OutputFormat::csv;
                else if (format == "json") config.output.format = OutputFormat::json;
                else issues.add("output.format", "expected 'csv' or 'json'");
            }
        }
    }

    if (issues.list.empty()) {
        validate_semantics(config, issues);
    }
    if (!issues.list.empty()) {
        std::string message = "scenario '" + config.name + "' is invalid:";
        for (const auto& issue : issues.list) message += "\n  " + issue;
        throw Error(Errc::ValidationError, message);
    }
    return config;
}

std::string serialize(const ScenarioConfig& config) {
    json doc = json::object();
    doc["name"] = config.name;
    doc["kind"] = std::string(to_string(config.kind));
    if (!config.states.empty()) {
        json states = json::object();
        for (const auto& [name, v] : config.states) states[name] = amplitudes_json(v);
        doc["states"] = states;
    }
    if (config.observable) {
        if (config.observable->preset) {
            doc["observable"] = *config.observable->preset;
        } else {
            json basis = json::array();
            for (const auto& v : config.observable->basis) basis.push_back(amplitudes_json(v));
            doc["observable"] = {{"eigenvalues", config.observable->eigenvalues}, {"basis", basis}};
        }
    }
    if (config.rho) {
        if (!config.rho->matrix.empty()) {
            json rows = json::array();
            for (const auto& row : config.rho->matrix) rows.push_back(amplitudes_json(row));
            doc["rho"] = {{"matrix", rows}};
        } else {
            json items = json::array();
            for (std::size_t k = 0; k < config.rho->weights.size(); ++k) {
                items.push_back({{"weight", config.rho->weights[k]}, {"state", amplitudes_json(config.rho->states[k])}});
            }
            doc["rho"] = {{"mixture", items}};
        }
    }
    json params = json::object();
    const auto& p = config.parameters;
    auto put = [&](const char* key, const auto& slot) {
        if (slot) params[key] = *slot;
    };
    put("phis", p.phis);
    put("angles", p.angles);
    put("mass", p.mass);
    put("tau", p.tau);
    put("hbar", p.hbar);
    put("x_max", p.x_max);
    put("grid_points", p.grid_points);
    put("n", p.n);
    put("seed", p.seed);
    put("eps", p.eps);
    put("w", p.w);
    put("delta_phi", p.delta_phi);
    put("h", p.h);
    put("workers", p.workers);
    if (!params.empty()) doc["parameters"] = params;
    json output = {{"format", std::string(to_string(config.output.format))}};
    if (!config.output.path.empty()) output["path"] = config.output.path;
    doc["output"] = output;
    return doc.dump(2) + "\n";
}

OutputTable run(const ScenarioConfig& config) {
    OutputTable table;
    const std::string canonical = serialize(config);
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(canonical)));
    table.add_metadata("scenario", config.name);
    table.add_metadata("kind", std::string(to_string(config.kind)));
    table.add_metadata("config_hash", std::string(hash));
    table.add_metadata("numeric_policy", policy_summary());
    table.add_metadata("tool_version", std::string("weaktension ") + WEAKTENSION_VERSION);
    try {
        switch (config.kind) {
            case ScenarioKind::triple: run_triple(config, table); break;
            case ScenarioKind::response_sweep: run_response_sweep(config, table); break;
            case ScenarioKind::tension_sweep: run_tension_sweep(config, table); break;
            case ScenarioKind::cv: run_cv(config, table); break;
            case ScenarioKind::montecarlo: run_montecarlo(config, table); break;
            case ScenarioKind::reconstruct: run_reconstruct(config, table); break;
        }
    } catch (const Error& e) {
        throw Error(e.code(), "scenario '" + config.name + "': " + e.what());
    } catch (const std::exception& e) {
        throw Error(Errc::InvalidParameter, "scenario '" + config.name + "': " + e.what());
    }
    return table;
}

std::string render(const OutputTable& table, OutputFormat format) {
    return format == OutputFormat::json ? to_json(table) : to_csv(table);
}

std::vector<BuiltinScenario> list_scenarios() { return builtins(); }

ScenarioConfig builtin_scenario(std::string_view name) {
    for (const auto& b : builtins()) {
        if (b.name == name) return parse_config(b.text);
    }
    throw Error(Errc::ValidationError, "no builtin scenario named '" + std::string(name) + "'");
}

}  // namespace weaktension
