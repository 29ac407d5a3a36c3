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

// Free particle with initial and final states that are position eigenstates
// at times -tau/2 and +tau/2:
//
//   <x|i> = L^{-1/2} exp(+i m x^2 / (hbar tau))
//   <x|f> = L^{-1/2} exp(-i m x^2 / (hbar tau))
//
// with L fixed to one length unit. The weak conditional density of position is
// sqrt(2m/(pi hbar tau)) exp(i 2m x^2/(hbar tau) - i pi/4).

#include <complex>
#include <vector>

namespace weaktension {

using Complex = std::complex<double>;

struct FreeParticleScenario {
    double mass = 1.0;
    double tau = 1.0;
    double hbar = 1.0;
    double x_max = 1.0;
    int count = 0;
    double dx = 0.0;
    std::vector<double> grid;  ///< count samples, symmetric, from -x_max to x_max

    /// m / (hbar tau)
    double chirp_rate() const noexcept { return mass / (hbar * tau); }
};

enum class Wavefunction { initial, final };

struct SampledWavefunction {
    std::vector<Complex> values;
    Wavefunction which = Wavefunction::initial;
};

struct ActionCurve {
    std::vector<double> wrapped;    ///< Arg p(x|if) in (-pi, pi]
    std::vector<double> unwrapped;  ///< continued from x = 0 outward
};

/// Throws Errc::InvalidParameter for non-positive parameters, count < 16, or a
/// grid too coarse to follow the chirp (adjacent action steps >= pi).
FreeParticleScenario build_scenario(double mass, double tau, double hbar, double x_max, int count);

Complex wavefunction(const FreeParticleScenario& s, Wavefunction which, double x);
SampledWavefunction sample_wavefunction(const FreeParticleScenario& s, Wavefunction which);

/// Closed-form p(x|if).
Complex weak_density(const FreeParticleScenario& s, double x);

/// Grid route to p(x_k|if): <f|x_k><x_k|i> / <f|i>, with <f|i> a midpoint
/// Riemann sum over the grid cells completed by the closed-form Fresnel tail
/// outside [-x_max - dx/2, x_max + dx/2].
std::vector<Complex> grid_weak_density(const FreeParticleScenario& s);

/// Relative error bound of grid_weak_density from the midpoint-rule remainder.
double grid_ratio_tolerance(const FreeParticleScenario& s);

ActionCurve action_curve(const FreeParticleScenario& s);

/// -hbar dS/dx = -4 m x / tau.
double momentum_difference(const FreeParticleScenario& s, double x);

/// -hbar dS/dx by finite differences of the unwrapped action on the grid.
std::vector<double> momentum_difference_profile(const FreeParticleScenario& s);

/// hbar times the phase gradient of the sampled wavefunction at x (central
/// difference with half-width dx_probe). Throws Errc::OutOfGrid when the
/// stencil leaves [-x_max, x_max].
double weak_momentum(const FreeParticleScenario& s, Wavefunction which, double x, double dx_probe);

/// Integral of (P_i - P_f)/hbar from 0 to x, built from weak_momentum.
double phase_space_area(const FreeParticleScenario& s, double x);

/// Integral of p(x|if) over [-window, window]; tends to 1 as the window grows.
Complex density_normalization_check(const FreeParticleScenario& s, double window);

/// Integral of exp(i rate t^2) over [0, upper] by composite Gauss-Legendre.
Complex fresnel_partial(double rate, double upper);
/// Same integral over [0, infinity): sqrt(pi/rate)/2 exp(i pi/4).
Complex fresnel_complete(double rate);

}  // namespace weaktension
