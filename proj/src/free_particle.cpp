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

#include "weaktension/free_particle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "weaktension/errors.hpp"
#include "weaktension/weak_engine.hpp"

namespace weaktension {

namespace {

constexpr int kMinGridPoints = 16;
constexpr double kAreaProbe = 1e-6;

using Gauss = boost::math::quadrature::gauss<double, 20>;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

double wrap(double angle) {
    const double two_pi = 2.0 * std::numbers::pi;
    double r = std::remainder(angle, two_pi);
    if (r <= -std::numbers::pi) r += two_pi;
    return r;
}

}  // namespace

FreeParticleScenario build_scenario(double mass, double tau, double hbar, double x_max, int count) {
    if (!positive_finite(mass) || !positive_finite(tau) || !positive_finite(hbar) ||
        !positive_finite(x_max)) {
        throw Error(Errc::InvalidParameter, "mass, tau, hbar and x_max must be positive and finite");
    }
    if (count < kMinGridPoints) {
        throw Error(Errc::InvalidParameter,
                    "grid needs at least " + std::to_string(kMinGridPoints) + " points");
    }
    FreeParticleScenario s;
    s.mass = mass;
    s.tau = tau;
    s.hbar = hbar;
    s.x_max = x_max;
    s.count = count;
    s.dx = 2.0 * x_max / (count - 1);
    // The action 2 a x^2 advances by about 4 a x dx between neighbours.
    if (4.0 * s.chirp_rate() * x_max * s.dx >= std::numbers::pi) {
        throw Error(Errc::InvalidParameter, "grid too coarse to unwrap the action");
    }
    s.grid.resize(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        // Mirror the two halves so the grid is exactly symmetric.
        const int mirror = count - 1 - k;
        const double x = k <= mirror ? -x_max + k * s.dx : x_max - mirror * s.dx;
        s.grid[static_cast<std::size_t>(k)] = x;
    }
    if (count % 2 == 1) {
        s.grid[static_cast<std::size_t>(count / 2)] = 0.0;
    }
    return s;
}

Complex wavefunction(const FreeParticleScenario& s, Wavefunction which, double x) {
    const double sign = which == Wavefunction::initial ? 1.0 : -1.0;
    return std::polar(1.0, sign * s.chirp_rate() * x * x);
}

SampledWavefunction sample_wavefunction(const FreeParticleScenario& s, Wavefunction which) {
    SampledWavefunction out;
    out.which = which;
    out.values.reserve(s.grid.size());
    for (const double x : s.grid) {
        out.values.push_back(wavefunction(s, which, x));
    }
    return out;
}

Complex weak_density(const FreeParticleScenario& s, double x) {
    const double a = s.chirp_rate();
    const double magnitude = std::sqrt(2.0 * a / std::numbers::pi);
    return std::polar(magnitude, wrap(2.0 * a * x * x - std::numbers::pi / 4.0));
}

Complex fresnel_partial(double rate, double upper) {
    if (!positive_finite(rate) || !(upper >= 0.0) || !std::isfinite(upper)) {
        throw Error(Errc::InvalidParameter, "fresnel_partial needs rate > 0 and upper >= 0");
    }
    if (upper == 0.0) {
        return 0.0;
    }
    // Keep the phase advance per panel near one radian.
    const int panels = std::max(4, static_cast<int>(std::ceil(2.0 * rate * upper * upper)));
    const double width = upper / panels;
    double re = 0.0;
    double im = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double lo = k * width;
        const double hi = k + 1 == panels ? upper : lo + width;
        re += Gauss::integrate([rate](double t) { return std::cos(rate * t * t); }, lo, hi);
        im += Gauss::integrate([rate](double t) { return std::sin(rate * t * t); }, lo, hi);
    }
    return {re, im};
}

Complex fresnel_complete(double rate) {
    return std::polar(0.5 * std::sqrt(std::numbers::pi / rate), std::numbers::pi / 4.0);
}

std::vector<Complex> grid_weak_density(const FreeParticleScenario& s) {
    const SampledWavefunction initial = sample_wavefunction(s, Wavefunction::initial);
    const SampledWavefunction final_state = sample_wavefunction(s, Wavefunction::final);
    std::vector<Complex> numerators(s.grid.size());
    Complex overlap = 0.0;
    for (std::size_t k = 0; k < s.grid.size(); ++k) {
        numerators[k] = std::conj(final_state.values[k]) * initial.values[k];
        overlap += numerators[k] * s.dx;
    }
    // conj(<x|f>) <x|i> = exp(2 i a x^2); the integrand beyond the grid cells
    // is added in closed form so the truncated chirp still normalizes.
    const double rate = 2.0 * s.chirp_rate();
    const double edge = s.x_max + 0.5 * s.dx;
    overlap += 2.0 * (fresnel_complete(rate) - fresnel_partial(rate, edge));
    for (auto& value : numerators) {
        value /= overlap;
    }
    return numerators;
}

double grid_ratio_tolerance(const FreeParticleScenario& s) {
    // |g''| for g = exp(2 i a x^2) is |4 i a - 16 a^2 x^2| <= sqrt(16 a^2 + 256 a^4 X^4).
    const double a = s.chirp_rate();
    const double x = s.x_max + 0.5 * s.dx;
    const double curvature = std::sqrt(16.0 * a * a + 256.0 * std::pow(a, 4) * std::pow(x, 4));
    const double remainder = 2.0 * x * s.dx * s.dx * curvature / 24.0;
    return remainder / std::abs(2.0 * fresnel_complete(2.0 * a)) + 1e-12;
}

ActionCurve action_curve(const FreeParticleScenario& s) {
    ActionCurve curve;
    const std::size_t n = s.grid.size();
    curve.wrapped.resize(n);
    curve.unwrapped.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        curve.wrapped[k] = principal_arg(weak_density(s, s.grid[k]));
    }
    std::size_t center = 0;
    for (std::size_t k = 1; k < n; ++k) {
        if (std::abs(s.grid[k]) < std::abs(s.grid[center])) center = k;
    }
    curve.unwrapped[center] = curve.wrapped[center];
    for (std::size_t k = center + 1; k < n; ++k) {
        curve.unwrapped[k] = curve.unwrapped[k - 1] + wrap(curve.wrapped[k] - curve.wrapped[k - 1]);
    }
    for (std::size_t k = center; k-- > 0;) {
        curve.unwrapped[k] = curve.unwrapped[k + 1] + wrap(curve.wrapped[k] - curve.wrapped[k + 1]);
    }
    return curve;
}

double momentum_difference(const FreeParticleScenario& s, double x) {
    return -4.0 * s.mass * x / s.tau;
}

std::vector<double> momentum_difference_profile(const FreeParticleScenario& s) {
    const std::vector<double> action = action_curve(s).unwrapped;
    const std::size_t n = action.size();
    std::vector<double> out(n);
    const double scale = -s.hbar / s.dx;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        out[k] = scale * 0.5 * (action[k + 1] - action[k - 1]);
    }
    out.front() = scale * 0.5 * (-3.0 * action[0] + 4.0 * action[1] - action[2]);
    out.back() = scale * 0.5 * (3.0 * action[n - 1] - 4.0 * action[n - 2] + action[n - 3]);
    return out;
}

double weak_momentum(const FreeParticleScenario& s, Wavefunction which, double x, double dx_probe) {
    if (!positive_finite(dx_probe)) {
        throw Error(Errc::InvalidParameter, "probe step must be positive");
    }
    if (!std::isfinite(x) || std::abs(x) + dx_probe > s.x_max) {
        throw Error(Errc::OutOfGrid, "stencil around x = " + std::to_string(x) + " leaves the grid");
    }
    const Complex ahead = wavefunction(s, which, x + dx_probe);
    const Complex behind = wavefunction(s, which, x - dx_probe);
    return s.hbar * std::arg(ahead * std::conj(behind)) / (2.0 * dx_probe);
}

double phase_space_area(const FreeParticleScenario& s, double x) {
    if (!std::isfinite(x) || std::abs(x) > s.x_max) {
        throw Error(Errc::OutOfGrid, "x outside the grid");
    }
    if (x == 0.0) {
        return 0.0;
    }
    const double probe = kAreaProbe * s.x_max;
    auto gap = [&](double t) {
        const double clamped = std::clamp(t, -s.x_max + probe, s.x_max - probe);
        return (weak_momentum(s, Wavefunction::initial, clamped, probe) -
                weak_momentum(s, Wavefunction::final, clamped, probe)) / s.hbar;
    };
    return x > 0.0 ? Gauss::integrate(gap, 0.0, x) : -Gauss::integrate(gap, x, 0.0);
}

Complex density_normalization_check(const FreeParticleScenario& s, double window) {
    if (!std::isfinite(window) || window < 0.0 || window > s.x_max) {
        throw Error(Errc::InvalidParameter, "window must lie in [0, x_max]");
    }
    const double a = s.chirp_rate();
    const Complex prefactor = std::polar(std::sqrt(2.0 * a / std::numbers::pi), -std::numbers::pi / 4.0);
    return prefactor * 2.0 * fresnel_partial(2.0 * a, window);
}

}  // namespace weaktension
