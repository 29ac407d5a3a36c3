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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "support/random_quantum.hpp"
#include "weaktension/free_particle.hpp"
#include "weaktension/scenario.hpp"
#include "weaktension/tension.hpp"
#include "weaktension/weak_engine.hpp"
#include "weaktension/weak_measurement.hpp"

namespace wt = weaktension;
using wt::Complex;

namespace {

constexpr double kPi = std::numbers::pi;

// Collects failed checks for one criterion along with a short summary.
struct Outcome {
    std::vector<std::string> failures;
    std::string summary;

    void require(bool ok, const std::string& what) {
        if (!ok && failures.size() < 10) failures.push_back(what);
        if (!ok && failures.size() == 10) failures.push_back("(further failures suppressed)");
    }
};

std::string fmt(const char* format, auto... args) {
    char buffer[256];
    std::snprintf(buffer, sizeof buffer, format, args...);
    return buffer;
}

double wrap(double angle) {
    double r = std::remainder(angle, 2 * kPi);
    if (r <= -kPi) r += 2 * kPi;
    return r;
}

struct Triple {
    wt::StateVector i;
    wt::StateVector f;
    wt::SpectralObservable obs;
};

Triple random_triple(wt::testing::RandomQuantum& rq, wt::Index dim, double min_overlap) {
    for (;;) {
        wt::StateVector i = rq.state(dim);
        wt::StateVector f = rq.state(dim);
        if (wt::transition_probability(i, f) > min_overlap) return {i, f, rq.observable(dim)};
    }
}

double cell(const wt::OutputTable& table, std::size_t row, const std::string& column) {
    return std::get<double>(table.rows.at(row).at(table.column(column)));
}

// 1. Octant triple.
Outcome octant_triple() {
    Outcome out;
    const auto z = wt::observables::pauli_z();
    const auto i = wt::states::plus_i();
    const auto f = wt::states::plus();
    const auto dist = wt::weak_conditional(i, f, z);
    out.require(std::abs(dist.values[0] - Complex(0.5, -0.5)) < 1e-12, "p(0|if) != (1-i)/2");
    out.require(std::abs(dist.values[1] - Complex(0.5, 0.5)) < 1e-12, "p(1|if) != (1+i)/2");
    const Complex w = wt::weak_value(i, f, z);
    out.require(std::abs(w - Complex(0.0, -1.0)) < 1e-12, "weak value != -i");
    const auto tension = wt::logical_tension(i, wt::states::zero(), f);
    out.require(std::abs(tension.tension + kPi / 4) < 1e-12, "tension != -pi/4");
    const auto consistency = wt::qubit_tension_consistency(i, wt::states::zero(), f);
    out.require(std::abs(std::abs(consistency.half_area) - kPi / 4) < 1e-9, "half area != pi/4");
    out.require(std::abs(std::abs(consistency.half_area) - std::abs(tension.tension)) < 1e-9, "|half area| != |tension|");

    // Same numbers through the scenario runner.
    const auto table = wt::run(wt::builtin_scenario("octant"));
    out.require(std::abs(cell(table, 0, "re_p") - 0.5) < 1e-12 && std::abs(cell(table, 0, "im_p") + 0.5) < 1e-12,
                "runner p(0|if)");
    out.require(std::abs(cell(table, 1, "re_p") - 0.5) < 1e-12 && std::abs(cell(table, 1, "im_p") - 0.5) < 1e-12,
                "runner p(1|if)");
    out.require(std::abs(cell(table, 0, "tension") + kPi / 4) < 1e-12, "runner tension");
    out.require(std::abs(cell(table, 0, "half_area") - kPi / 4) < 1e-9, "runner half area");
    const auto* wv_im = table.find_metadata("weak_value_im");
    const auto* wv_re = table.find_metadata("weak_value_re");
    out.require(wv_im && wv_re && std::abs(std::get<double>(*wv_im) + 1.0) < 1e-12 &&
                    std::abs(std::get<double>(*wv_re)) < 1e-12,
                "runner weak value");
    out.summary = fmt("S=%.15f, half area=%.15f", tension.tension, consistency.half_area);
    return out;
}

// 2. Pure-state response exactness.
Outcome pure_response_exactness() {
    Outcome out;
    wt::testing::RandomQuantum rq(0xac2);
    std::vector<double> phis;
    for (int k = 0; k <= 100; ++k) phis.push_back(-2 * kPi + 4 * kPi * k / 100.0);
    double worst = 0.0;
    int triples = 0;
    for (wt::Index dim = 2; dim <= 8; ++dim) {
        for (int t = 0; t < 30; ++t, ++triples) {
            const Triple tr = random_triple(rq, dim, 1e-6);
            const auto curve = wt::response_curve(tr.i, tr.f, tr.obs, phis);
            worst = std::max(worst, curve.max_abs_difference());
        }
    }
    out.require(triples >= 200, "fewer than 200 triples");
    out.require(worst < 1e-10, fmt("max |predicted - direct| = %.3e", worst));
    out.summary = fmt("%d triples x %zu phis, max diff %.2e", triples, phis.size(), worst);
    return out;
}

// 3. Optimal unitary.
Outcome optimal_unitary() {
    Outcome out;
    wt::testing::RandomQuantum rq(0xac3);
    double worst_match = 0.0;
    double worst_excess = -1.0;
    int triples = 0;
    for (wt::Index dim = 2; dim <= 8; ++dim) {
        for (int t = 0; t < 30; ++t, ++triples) {
            const Triple tr = random_triple(rq, dim, 1e-6);
            const auto dist = wt::weak_conditional(tr.i, tr.f, tr.obs);
            const double best = wt::max_overlap_probability(dist);
            double abs_sum = 0.0;
            for (const Complex p : dist.values) abs_sum += std::abs(p);
            worst_match = std::max(worst_match, std::abs(best - abs_sum * abs_sum * dist.base_probability));
            const wt::Matrix u = wt::optimal_unitary(dist, tr.obs);
            const double achieved = std::norm(tr.f.amplitudes().dot(u * tr.i.amplitudes()));
            worst_match = std::max(worst_match, std::abs(achieved - best));
            for (int draw = 0; draw < 50; ++draw) {
                // alternative diagonal unitary in the same basis
                std::vector<double> phases(static_cast<std::size_t>(dim));
                for (double& p : phases) p = rq.uniform(-kPi, kPi);
                wt::Matrix alt = wt::Matrix::Zero(dim, dim);
                for (wt::Index m = 0; m < dim; ++m) {
                    const wt::Vector& v = tr.obs.eigenvector(m).amplitudes();
                    alt += std::polar(1.0, phases[static_cast<std::size_t>(m)]) * v * v.adjoint();
                }
                const double p_alt = std::norm(tr.f.amplitudes().dot(alt * tr.i.amplitudes()));
                worst_excess = std::max(worst_excess, p_alt - best);
            }
        }
    }
    out.require(worst_match < 1e-10, fmt("U_max mismatch %.3e", worst_match));
    out.require(worst_excess <= 1e-10, fmt("alternative exceeds maximum by %.3e", worst_excess));
    const auto octant = wt::weak_conditional(wt::states::plus_i(), wt::states::plus(), wt::observables::pauli_z());
    const double octant_max = wt::max_overlap_probability(octant);
    out.require(std::abs(octant_max - 1.0) < 1e-12, fmt("octant p(f;max) = %.17g", octant_max));
    out.summary = fmt("%d triples, worst mismatch %.2e, worst alternative excess %.2e, octant max %.15f", triples,
                      worst_match, worst_excess, octant_max);
    return out;
}

// 4. Imaginary-response law.
Outcome imaginary_response() {
    Outcome out;
    wt::testing::RandomQuantum rq(0xac4);
    double worst = 0.0;
    int triples = 0;
    for (wt::Index dim = 2; dim <= 8; ++dim) {
        for (int t = 0; t < 30; ++t, ++triples) {
            // Pauli-scale spectrum and post-selection probability above 0.05:
            // the O(h^2) stencil error grows with the cube of the weak value.
            Triple tr = random_triple(rq, dim, 0.05);
            tr.obs = rq.observable(dim, 1.0);
            const auto r = wt::imaginary_response_check(tr.i, tr.f, tr.obs, 1e-3);
            worst = std::max(worst, std::abs(r.finite_diff - r.weak_imag));
        }
    }
    out.require(worst < 1e-5, fmt("max |finite diff - weak imag| = %.3e", worst));
    const auto octant = wt::imaginary_response_check(wt::states::plus_i(), wt::states::plus(), wt::observables::pauli_z(), 1e-3);
    out.require(std::abs(octant.weak_imag + 1.0) < 1e-12, "octant weak imag != -1");
    out.require(std::abs(octant.finite_diff + 1.0) < 1e-5, fmt("octant finite diff = %.10f", octant.finite_diff));
    out.summary = fmt("%d triples, max error %.2e, octant %.9f", triples, worst, octant.finite_diff);
    return out;
}

// 5. Mixed-state inequality and curvature bound.
Outcome mixed_inequality() {
    Outcome out;
    wt::testing::RandomQuantum rq(0xac5);
    double worst_violation = -1.0;
    double worst_pure = 0.0;
    int samples = 0;
    int curvature_failures = 0;
    for (; samples < 600; ++samples) {
        const wt::Index dim = rq.integer(2, 8);
        const wt::DensityOperator rho = rq.mixture(dim);
        const wt::StateVector f = rq.state(dim);
        const wt::SpectralObservable obs = rq.observable(dim);
        const std::vector<double> phi{rq.uniform(-2 * kPi, 2 * kPi)};
        const auto curve = wt::mixed_response_bound_check(rho, f, obs, phi);
        worst_violation = std::max(worst_violation, curve.predicted[0] - curve.direct[0]);
        curvature_failures += !wt::curvature_bound_check(rho, f, obs, 1e-3).satisfied;

        // equality branch on a pure rho
        const wt::StateVector psi = rq.state(dim);
        const auto pure = wt::mixed_response_bound_check(wt::DensityOperator::pure(psi), f, obs, phi);
        worst_pure = std::max(worst_pure, pure.max_abs_difference());
        curvature_failures += !wt::curvature_bound_check(wt::DensityOperator::pure(psi), f, obs, 1e-3).satisfied;
    }
    out.require(worst_violation <= 1e-10, fmt("predicted exceeds direct by %.3e", worst_violation));
    out.require(worst_pure < 1e-10, fmt("pure rho differs by %.3e", worst_pure));
    out.require(curvature_failures == 0, fmt("%d curvature-bound failures", curvature_failures));
    const auto octant = wt::curvature_bound_check(wt::states::plus_i(), wt::states::plus(), wt::observables::pauli_z(), 1e-3);
    out.require(std::abs(octant.bound) < 1e-15, fmt("octant bound = %.3e", octant.bound));
    out.require(std::abs(octant.second_deriv) < 1e-6, fmt("octant second derivative = %.3e", octant.second_deriv));
    out.require(octant.satisfied, "octant curvature check not satisfied");
    out.summary = fmt("%d samples, max(predicted-direct) %.2e, pure diff %.2e, octant p''=%.2e bound=%.2e", samples,
                      worst_violation, worst_pure, octant.second_deriv, octant.bound);
    return out;
}

// 6. Free-particle scenario.
Outcome free_particle() {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    const auto table = wt::run(wt::builtin_scenario("free_particle_default"));
    const auto s = wt::build_scenario(1.0, 1.0, 1.0, 3.0, 601);
    const double phase0 = std::arg(wt::weak_density(s, 0.0));
    out.require(std::abs(phase0 + kPi / 4) < 1e-12, fmt("phase at 0 = %.17g", phase0));
    out.require(std::abs(std::get<double>(*table.find_metadata("phase_at_zero")) + kPi / 4) < 1e-12, "runner phase at 0");

    double magnitude_spread = 0.0;
    const double magnitude0 = cell(table, 0, "abs_p");
    double worst_dp = 0.0;
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
        magnitude_spread = std::max(magnitude_spread, std::abs(cell(table, k, "abs_p") - magnitude0));
        const double x = cell(table, k, "x");
        worst_dp = std::max(worst_dp, std::abs(cell(table, k, "dp") - (-4.0 * s.mass * x / s.tau)));
        if (x == 0.0) out.require(std::abs(cell(table, k, "s_wrapped") + kPi / 4) < 1e-12, "table row at x=0");
    }
    out.require(magnitude_spread < 1e-12, fmt("|p| spread %.3e", magnitude_spread));
    const double dp_tol = s.dx * s.dx * 4.0 * s.chirp_rate() * s.hbar;  // O(dx^2) with the chirp scale
    out.require(worst_dp < dp_tol, fmt("dP error %.3e exceeds %.3e", worst_dp, dp_tol));
    const double ratio_error = std::get<double>(*table.find_metadata("grid_ratio_max_error"));
    const double ratio_tol = std::get<double>(*table.find_metadata("grid_ratio_tolerance"));
    out.require(ratio_error < ratio_tol, fmt("grid ratio error %.3e vs tolerance %.3e", ratio_error, ratio_tol));
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(seconds < 5.0, fmt("runtime %.2f s", seconds));
    out.summary = fmt("phase(0)=%.15f, dP err %.1e, grid ratio %.1e < %.1e", phase0, worst_dp, ratio_error, ratio_tol);
    return out;
}

// 7. Tension laws.
Outcome tension_laws() {
    Outcome out;
    wt::testing::RandomQuantum rq(0xac7);
    double worst_gauge = 0.0;
    double worst_arg = 0.0;
    int negatives = 0;
    for (int t = 0; t < 200; ++t) {
        const wt::StateVector i = rq.state(2), m = rq.state(2), f = rq.state(2);
        const double s = wt::logical_tension(i, m, f).tension;
        out.require(s == wt::logical_tension(m, f, i).tension && s == wt::logical_tension(f, i, m).tension,
                    fmt("cyclic invariance, triple %d", t));
        out.require(s == -wt::logical_tension(f, m, i).tension, fmt("antisymmetry, triple %d", t));
        const double gauged =
            wt::logical_tension(i.with_phase(rq.uniform(-kPi, kPi)), m.with_phase(rq.uniform(-kPi, kPi)),
                                f.with_phase(rq.uniform(-kPi, kPi)))
                .tension;
        worst_gauge = std::max(worst_gauge, std::abs(wrap(gauged - s)));

        const wt::SpectralObservable basis({1.0, -1.0}, {m, wt::StateVector(wt::Vector{{-std::conj(m[1]), std::conj(m[0])}})});
        const auto dist = wt::weak_conditional(i, f, basis);
        const Complex p = dist.values[0];
        worst_arg = std::max(worst_arg, std::abs(wrap(wt::principal_arg(p) - s)));
        out.require((p.real() < 0.0) == (std::abs(s) > kPi / 2), fmt("Re p sign vs |S|, triple %d", t));
        negatives += p.real() < 0.0;
    }
    out.require(worst_gauge < 1e-12, fmt("gauge error %.3e", worst_gauge));
    out.require(worst_arg < 1e-12, fmt("Arg p vs S error %.3e", worst_arg));
    out.summary = fmt("200 triples, gauge %.1e, Arg p vs S %.1e, %d with Re p < 0", worst_gauge, worst_arg, negatives);
    return out;
}

// 8. Monte Carlo recovery.
Outcome monte_carlo() {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    const auto table = wt::run(wt::builtin_scenario("montecarlo_octant"));
    const double z_re = cell(table, 0, "z_score");
    const double z_im = cell(table, 1, "z_score");
    out.require(std::abs(cell(table, 0, "oracle")) < 1e-12 && std::abs(cell(table, 1, "oracle") + 1.0) < 1e-12,
                "oracle values");
    out.require(std::abs(z_re) < 3.0, fmt("real estimate z = %.3f", z_re));
    out.require(std::abs(z_im) < 3.0, fmt("imaginary estimate z = %.3f", z_im));

    const auto z = wt::observables::pauli_z();
    const auto meter = wt::MeterModel::symmetric(0.01);
    int real_hits = 0, imag_hits = 0;
    for (std::uint64_t rep = 0; rep < 100; ++rep) {
        const std::uint64_t seed = 0xc0ffee + rep;
        const auto counts = wt::simulate_trials(wt::states::plus_i(), wt::states::plus(), z, meter, 1'000'000, seed);
        const auto re = wt::estimate_real_weak_value(counts, meter);
        const auto im = wt::estimate_imag_weak_value(wt::states::plus_i(), wt::states::plus(), z, 0.01, 1'000'000, seed);
        real_hits += std::abs(re.estimate) < 3 * re.std_error;
        imag_hits += std::abs(im.estimate + 1.0) < 3 * im.std_error;
    }
    out.require(real_hits >= 99, fmt("real coverage %d/100", real_hits));
    out.require(imag_hits >= 99, fmt("imaginary coverage %d/100", imag_hits));
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(seconds < 60.0, fmt("runtime %.2f s", seconds));
    out.summary = fmt("z(re)=%.2f, z(im)=%.2f, coverage %d/100 and %d/100", z_re, z_im, real_hits, imag_hits);
    return out;
}

// 9. Wavefunction reconstruction.
Outcome reconstruction() {
    Outcome out;
    wt::testing::RandomQuantum rq(0xac9);
    double worst = 1.0;
    int states = 0;
    for (const wt::Index dim : {2, 3}) {
        std::vector<wt::StateVector> basis;
        for (wt::Index k = 0; k < dim; ++k) basis.push_back(wt::StateVector::basis(dim, k));
        std::vector<double> values(static_cast<std::size_t>(dim));
        for (std::size_t k = 0; k < values.size(); ++k) values[k] = static_cast<double>(k);
        const wt::SpectralObservable obs(values, basis);
        for (int t = 0; t < 50; ++t) {
            const wt::StateVector i = rq.state(dim);
            if (wt::transition_probability(i, wt::StateVector::uniform(dim)) <= 1e-12) {
                --t;
                continue;
            }
            const auto raw = wt::reconstruct_wavefunction(i, obs);
            worst = std::min(worst, wt::compare_reconstruction(raw, i, obs).fidelity);
            ++states;
        }
    }
    out.require(worst > 1.0 - 1e-10, fmt("worst fidelity 1 - %.3e", 1.0 - worst));
    out.summary = fmt("%d states (qubit + qutrit), worst 1 - F = %.2e", states, 1.0 - worst);
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        const char* id;
        const char* title;
        std::function<Outcome()> check;
        double budget_seconds;  // 0: no runtime bound
    };
    const Criterion criteria[] = {
        {"AC1", "octant triple", octant_triple, 1.0},
        {"AC2", "pure-state response exactness", pure_response_exactness, 30.0},
        {"AC3", "optimal unitary", optimal_unitary, 0.0},
        {"AC4", "imaginary-response law", imaginary_response, 0.0},
        {"AC5", "mixed-state inequality and curvature bound", mixed_inequality, 0.0},
        {"AC6", "free-particle scenario", free_particle, 5.0},
        {"AC7", "tension laws", tension_laws, 0.0},
        {"AC8", "Monte Carlo recovery", monte_carlo, 60.0},
        {"AC9", "wavefunction reconstruction", reconstruction, 0.0},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.check();
        } catch (const std::exception& e) {
            outcome.failures.push_back(std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0.0 && seconds >= c.budget_seconds) {
            outcome.failures.push_back(fmt("runtime %.2f s exceeds %.0f s", seconds, c.budget_seconds));
        }
        const bool pass = outcome.failures.empty();
        failed += !pass;
        std::printf("%s %s  %s (%.3f s)  %s\n", c.id, pass ? "PASS" : "FAIL", c.title, seconds, outcome.summary.c_str());
        for (const auto& f : outcome.failures) std::printf("    - %s\n", f.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
    return failed == 0 ? 0 : 1;
}
