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

// Weak values and complex weak conditional probabilities
//
//   p(m|if) = <f|m><m|i> / <f|i>
//
// together with everything that can be read off them: the response of the
// post-selection probability to unitaries exp(-i phi A) that conserve the
// projectors |m><m|, the overlap-maximizing unitary and its action profile,
// and the inequalities that replace the exact response law for mixed inputs.

#include <cstdint>
#include <span>
#include <vector>

#include "weaktension/hilbert.hpp"

namespace weaktension {

enum class DistributionSource { pure, mixed };

/// Complex quasi-probabilities p(m|if), one per eigenvector (degenerate
/// eigenvalues are resolved per vector, never merged).
struct WeakConditionalDistribution {
    std::vector<Complex> values;
    double base_probability = 0.0;  ///< p(f;0) = |<f|i>|^2 or <f|rho|f>
    DistributionSource source = DistributionSource::pure;
    std::uint64_t basis_fingerprint = 0;

    Index dim() const noexcept { return static_cast<Index>(values.size()); }
    Complex sum() const noexcept;
};

struct ActionProfile {
    std::vector<double> actions;  ///< Arg p(m|if) in (-pi, pi]; 0 where masked
    std::vector<bool> defined_mask;
};

struct ResponseCurve {
    std::vector<double> phis;
    std::vector<double> predicted;
    std::vector<double> direct;
    std::vector<bool> satisfied;  ///< direct >= predicted - 1e-10

    double max_abs_difference() const noexcept;
    bool all_satisfied() const noexcept;
};

struct ImaginaryResponse {
    double finite_diff = 0.0;  ///< central difference of (1/2) ln p(f;phi) at phi = 0
    double weak_imag = 0.0;    ///< sum_m A_m Im p(m|if)
};

struct CurvatureBound {
    double second_deriv = 0.0;
    double bound = 0.0;
    bool satisfied = false;
};

/// Principal argument in (-pi, pi].
double principal_arg(Complex z) noexcept;

/// <f|A|i>/<f|i> evaluated with the dense operator.
Complex weak_value(const StateVector& initial, const StateVector& final_state,
                   const SpectralObservable& obs);
/// sum_m A_m p(m|if); the spectral route to the same number.
Complex weak_value(const WeakConditionalDistribution& dist, const SpectralObservable& obs);

WeakConditionalDistribution weak_conditional(const StateVector& initial,
                                             const StateVector& final_state,
                                             const SpectralObservable& basis);

/// Mixed input: |i> is replaced by rho|f>, i.e.
/// p(m|if) = <f|m><m|rho|f> / <f|rho|f>.
WeakConditionalDistribution weak_conditional_mixed(const DensityOperator& rho,
                                                   const StateVector& final_state,
                                                   const SpectralObservable& basis);

ActionProfile action_profile(const WeakConditionalDistribution& dist);

/// U_max = sum_m exp(-i S_m) |m><m|.
Matrix optimal_unitary(const WeakConditionalDistribution& dist, const SpectralObservable& basis);

/// (sum_m |p(m|if)|)^2 p(f;0).
double max_overlap_probability(const WeakConditionalDistribution& dist);

/// |sum_m exp(-i phi A_m) p(m|if)|^2 p(f;0), using nothing but the weak data.
double predict_response(const WeakConditionalDistribution& dist, const SpectralObservable& basis,
                        double phi);

/// Transition probability after actually applying exp(-i phi A).
double direct_response(const StateVector& initial, const StateVector& final_state,
                       const SpectralObservable& obs, double phi);
double direct_response(const DensityOperator& initial, const StateVector& final_state,
                       const SpectralObservable& obs, double phi);

inline constexpr double kDefaultDerivativeStep = 1e-3;

ImaginaryResponse imaginary_response_check(const StateVector& initial,
                                           const StateVector& final_state,
                                           const SpectralObservable& obs,
                                           double h = kDefaultDerivativeStep);

/// Lower bound on d^2 p(f;phi)/dphi^2 at phi = 0:
///   -2 (sum_m A_m^2 Re p(m|if) - |sum_m A_m p(m|if)|^2) p(f;0),
/// compared against a 5-point stencil with slack max(1e-6, 100 h^2).
CurvatureBound curvature_bound_check(const StateVector& initial, const StateVector& final_state,
                                     const SpectralObservable& obs,
                                     double h = kDefaultDerivativeStep);
CurvatureBound curvature_bound_check(const DensityOperator& initial,
                                     const StateVector& final_state,
                                     const SpectralObservable& obs,
                                     double h = kDefaultDerivativeStep);

/// Predicted vs direct response over a phi grid. For pure rho the two agree;
/// otherwise direct >= predicted.
ResponseCurve mixed_response_bound_check(const DensityOperator& rho,
                                         const StateVector& final_state,
                                         const SpectralObservable& obs,
                                         std::span<const double> phis);
ResponseCurve response_curve(const StateVector& initial, const StateVector& final_state,
                             const SpectralObservable& obs, std::span<const double> phis);

/// Post-selecting on the uniform superposition makes p(m|if) proportional to
/// <m|i>. Returns the raw p(m|if) values.
std::vector<Complex> reconstruct_wavefunction(const StateVector& initial,
                                              const SpectralObservable& basis);

struct ReconstructionReport {
    std::vector<Complex> aligned;    ///< unit-norm amplitudes, phase-aligned to the reference
    std::vector<Complex> reference;  ///< <m|reference>
    double fidelity = 0.0;
};

/// Renormalizes reconstructed amplitudes, aligns their global phase with
/// `reference` and reports the fidelity |<reference|reconstruction>|^2.
ReconstructionReport compare_reconstruction(std::span<const Complex> reconstructed,
                                            const StateVector& reference,
                                            const SpectralObservable& basis);

}  // namespace weaktension
