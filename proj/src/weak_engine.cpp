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

#include "weaktension/weak_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "weaktension/errors.hpp"
#include "weaktension/numeric_policy.hpp"

namespace weaktension {

namespace {

constexpr double kResponseSlack = 1e-10;

void require_postselection(double probability, std::string_view context) {
    if (!(probability > numeric_policy().overlap_floor)) {
        throw Error(Errc::OrthogonalPostselection,
                    std::string(context) + ": post-selection probability " +
                        std::to_string(probability) + " is at or below the overlap floor");
    }
}

void require_basis(const WeakConditionalDistribution& dist, const SpectralObservable& basis,
                   std::string_view context) {
    if (dist.dim() != basis.dim() || dist.basis_fingerprint != basis.basis_fingerprint()) {
        throw Error(Errc::BasisMismatch,
                    std::string(context) + ": distribution was computed in a different basis");
    }
}

void require_valid(const SpectralObservable& obs) {
    if (!obs.is_valid()) {
        throw Error(Errc::InvalidObservable, "eigenbasis is not orthonormal and complete");
    }
}

void require_step(double h) {
    if (!(h >= 1e-6 && h <= 1e-2)) {
        throw Error(Errc::InvalidParameter, "derivative step must lie in [1e-6, 1e-2]");
    }
}

// p(m|if) = <f|m> c_m / norm, where c_m = <m|i> or <m|rho|f>.
WeakConditionalDistribution assemble(const Vector& f_coords, const Vector& numerators,
                                     Complex normalizer, double base_probability,
                                     DistributionSource source, const SpectralObservable& basis) {
    WeakConditionalDistribution dist;
    dist.values.resize(static_cast<std::size_t>(basis.dim()));
    for (Index m = 0; m < basis.dim(); ++m) {
        dist.values[static_cast<std::size_t>(m)] = std::conj(f_coords(m)) * numerators(m) / normalizer;
    }
    dist.base_probability = base_probability;
    dist.source = source;
    dist.basis_fingerprint = basis.basis_fingerprint();
    return dist;
}

Complex amplitude_sum(const WeakConditionalDistribution& dist, const SpectralObservable& basis,
                      double phi) {
    Complex total = 0.0;
    for (Index m = 0; m < dist.dim(); ++m) {
        total += std::polar(1.0, -phi * basis.eigenvalue(m)) * dist.values[static_cast<std::size_t>(m)];
    }
    return total;
}

double curvature_bound(const WeakConditionalDistribution& dist, const SpectralObservable& obs) {
    double second_moment = 0.0;
    Complex first_moment = 0.0;
    for (Index m = 0; m < dist.dim(); ++m) {
        const double a = obs.eigenvalue(m);
        const Complex p = dist.values[static_cast<std::size_t>(m)];
        second_moment += a * a * p.real();
        first_moment += a * p;
    }
    return -2.0 * (second_moment - std::norm(first_moment)) * dist.base_probability;
}

template <typename Initial>
CurvatureBound curvature_check(const Initial& initial, const StateVector& final_state,
                               const SpectralObservable& obs, double h,
                               const WeakConditionalDistribution& dist) {
    require_step(h);
    auto p = [&](double phi) { return direct_response(initial, final_state, obs, phi); };
    CurvatureBound out;
    out.second_deriv =
        (-p(2.0 * h) + 16.0 * p(h) - 30.0 * p(0.0) + 16.0 * p(-h) - p(-2.0 * h)) / (12.0 * h * h);
    out.bound = curvature_bound(dist, obs);
    const double slack = std::max(1e-6, 100.0 * h * h);
    out.satisfied = out.second_deriv >= out.bound - slack;
    return out;
}

}  // namespace

Complex WeakConditionalDistribution::sum() const noexcept {
    Complex total = 0.0;
    for (const Complex v : values) total += v;
    return total;
}

double ResponseCurve::max_abs_difference() const noexcept {
    double worst = 0.0;
    for (std::size_t k = 0; k < phis.size(); ++k) {
        worst = std::max(worst, std::abs(predicted[k] - direct[k]));
    }
    return worst;
}

bool ResponseCurve::all_satisfied() const noexcept {
    return std::all_of(satisfied.begin(), satisfied.end(), [](bool b) { return b; });
}

double principal_arg(Complex z) noexcept {
    const double angle = std::arg(z);
    // std::arg returns [-pi, pi]; fold the lower edge onto +pi.
    return angle <= -std::numbers::pi ? std::numbers::pi : angle;
}

Complex weak_value(const StateVector& initial, const StateVector& final_state,
                   const SpectralObservable& obs) {
    require_same_dim(initial.dim(), final_state.dim(), "weak_value");
    require_same_dim(initial.dim(), obs.dim(), "weak_value");
    const Complex overlap = inner_product(final_state, initial);
    require_postselection(std::norm(overlap), "weak_value");
    const Complex numerator =
        final_state.amplitudes().dot(obs.matrix() * initial.amplitudes());
    return numerator / overlap;
}

Complex weak_value(const WeakConditionalDistribution& dist, const SpectralObservable& obs) {
    require_basis(dist, obs, "weak_value");
    Complex total = 0.0;
    for (Index m = 0; m < dist.dim(); ++m) {
        total += obs.eigenvalue(m) * dist.values[static_cast<std::size_t>(m)];
    }
    return total;
}

WeakConditionalDistribution weak_conditional(const StateVector& initial,
                                             const StateVector& final_state,
                                             const SpectralObservable& basis) {
    require_same_dim(initial.dim(), final_state.dim(), "weak_conditional");
    require_same_dim(initial.dim(), basis.dim(), "weak_conditional");
    require_valid(basis);
    const Complex overlap = inner_product(final_state, initial);
    const double base = std::norm(overlap);
    require_postselection(base, "weak_conditional");
    const Matrix& v = basis.eigenvector_matrix();
    const Vector f_coords = v.adjoint() * final_state.amplitudes();
    const Vector i_coords = v.adjoint() * initial.amplitudes();
    return assemble(f_coords, i_coords, overlap, std::min(base, 1.0), DistributionSource::pure, basis);
}

WeakConditionalDistribution weak_conditional_mixed(const DensityOperator& rho,
                                                   const StateVector& final_state,
                                                   const SpectralObservable& basis) {
    require_same_dim(rho.dim(), final_state.dim(), "weak_conditional_mixed");
    require_same_dim(rho.dim(), basis.dim(), "weak_conditional_mixed");
    require_valid(basis);
    const Vector rho_f = rho.entries() * final_state.amplitudes();
    const Complex normalizer = final_state.amplitudes().dot(rho_f);
    const double base = normalizer.real();
    require_postselection(base, "weak_conditional_mixed");
    const Matrix& v = basis.eigenvector_matrix();
    const Vector f_coords = v.adjoint() * final_state.amplitudes();
    const Vector rho_f_coords = v.adjoint() * rho_f;
    return assemble(f_coords, rho_f_coords, Complex(base, 0.0), std::min(base, 1.0),
                    DistributionSource::mixed, basis);
}

ActionProfile action_profile(const WeakConditionalDistribution& dist) {
    const double floor = numeric_policy().magnitude_floor;
    ActionProfile profile;
    profile.actions.reserve(dist.values.size());
    profile.defined_mask.reserve(dist.values.size());
    for (const Complex p : dist.values) {
        const bool defined = std::abs(p) > floor;
        profile.defined_mask.push_back(defined);
        profile.actions.push_back(defined ? principal_arg(p) : 0.0);
    }
    return profile;
}

Matrix optimal_unitary(const WeakConditionalDistribution& dist, const SpectralObservable& basis) {
    require_basis(dist, basis, "optimal_unitary");
    const ActionProfile profile = action_profile(dist);
    Vector phases(dist.dim());
    for (Index m = 0; m < dist.dim(); ++m) {
        phases(m) = std::polar(1.0, -profile.actions[static_cast<std::size_t>(m)]);
    }
    const Matrix& v = basis.eigenvector_matrix();
    return v * phases.asDiagonal() * v.adjoint();
}

double max_overlap_probability(const WeakConditionalDistribution& dist) {
    double total = 0.0;
    for (const Complex p : dist.values) total += std::abs(p);
    return total * total * dist.base_probability;
}

double predict_response(const WeakConditionalDistribution& dist, const SpectralObservable& basis,
                        double phi) {
    require_basis(dist, basis, "predict_response");
    if (phi == 0.0) {
        return dist.base_probability;
    }
    return std::norm(amplitude_sum(dist, basis, phi)) * dist.base_probability;
}

double direct_response(const StateVector& initial, const StateVector& final_state,
                       const SpectralObservable& obs, double phi) {
    require_same_dim(initial.dim(), final_state.dim(), "direct_response");
    return transition_probability(evolve(initial, obs, UnitaryParameter(phi)), final_state);
}

double direct_response(const DensityOperator& initial, const StateVector& final_state,
                       const SpectralObservable& obs, double phi) {
    require_same_dim(initial.dim(), final_state.dim(), "direct_response");
    // <f|U rho U^dag|f> = <g|rho|g> with |g> = U^dag|f>.
    const StateVector pulled_back = evolve(final_state, obs, UnitaryParameter(-phi));
    return transition_probability(initial, pulled_back);
}

ImaginaryResponse imaginary_response_check(const StateVector& initial,
                                           const StateVector& final_state,
                                           const SpectralObservable& obs, double h) {
    require_step(h);
    const WeakConditionalDistribution dist = weak_conditional(initial, final_state, obs);
    const double forward = direct_response(initial, final_state, obs, h);
    const double backward = direct_response(initial, final_state, obs, -h);
    if (!(forward > 0.0 && backward > 0.0)) {
        throw Error(Errc::OrthogonalPostselection, "imaginary_response_check: probability vanishes within the stencil");
    }
    ImaginaryResponse out;
    out.finite_diff = (std::log(forward) - std::log(backward)) / (4.0 * h);
    for (Index m = 0; m < dist.dim(); ++m) {
        out.weak_imag += obs.eigenvalue(m) * dist.values[static_cast<std::size_t>(m)].imag();
    }
    return out;
}

CurvatureBound curvature_bound_check(const StateVector& initial, const StateVector& final_state,
                                     const SpectralObservable& obs, double h) {
    return curvature_check(initial, final_state, obs, h, weak_conditional(initial, final_state, obs));
}

CurvatureBound curvature_bound_check(const DensityOperator& initial,
                                     const StateVector& final_state,
                                     const SpectralObservable& obs, double h) {
    return curvature_check(initial, final_state, obs, h,
                           weak_conditional_mixed(initial, final_state, obs));
}

ResponseCurve mixed_response_bound_check(const DensityOperator& rho,
                                         const StateVector& final_state,
                                         const SpectralObservable& obs,
                                         std::span<const double> phis) {
    const WeakConditionalDistribution dist = weak_conditional_mixed(rho, final_state, obs);
    ResponseCurve curve;
    for (const double phi : phis) {
        const double predicted = predict_response(dist, obs, phi);
        const double direct = direct_response(rho, final_state, obs, phi);
        curve.phis.push_back(phi);
        curve.predicted.push_back(predicted);
        curve.direct.push_back(direct);
        curve.satisfied.push_back(direct >= predicted - kResponseSlack);
    }
    return curve;
}

ResponseCurve response_curve(const StateVector& initial, const StateVector& final_state,
                             const SpectralObservable& obs, std::span<const double> phis) {
    const WeakConditionalDistribution dist = weak_conditional(initial, final_state, obs);
    ResponseCurve curve;
    for (const double phi : phis) {
        const double predicted = predict_response(dist, obs, phi);
        const double direct = direct_response(initial, final_state, obs, phi);
        curve.phis.push_back(phi);
        curve.predicted.push_back(predicted);
        curve.direct.push_back(direct);
        curve.satisfied.push_back(direct >= predicted - kResponseSlack);
    }
    return curve;
}

std::vector<Complex> reconstruct_wavefunction(const StateVector& initial,
                                              const SpectralObservable& basis) {
    require_same_dim(initial.dim(), basis.dim(), "reconstruct_wavefunction");
    require_valid(basis);
    // Uniform superposition of the measurement basis, not of the computational one.
    const StateVector post(Vector(basis.eigenvector_matrix() * Vector::Ones(basis.dim())));
    return weak_conditional(initial, post, basis).values;
}

ReconstructionReport compare_reconstruction(std::span<const Complex> reconstructed,
                                            const StateVector& reference,
                                            const SpectralObservable& basis) {
    require_same_dim(static_cast<Index>(reconstructed.size()), basis.dim(), "compare_reconstruction");
    require_same_dim(reference.dim(), basis.dim(), "compare_reconstruction");
    const Vector ref = basis.eigenvector_matrix().adjoint() * reference.amplitudes();
    Vector rec = Vector::Map(reconstructed.data(), basis.dim());
    const double norm = rec.norm();
    if (!(norm > 0.0)) {
        throw Error(Errc::InvalidState, "reconstruction is the zero vector");
    }
    rec /= norm;
    const Complex overlap = ref.dot(rec);
    if (std::abs(overlap) > 0.0) {
        rec *= std::conj(overlap) / std::abs(overlap);
    }
    ReconstructionReport report;
    report.aligned.assign(rec.data(), rec.data() + rec.size());
    report.reference.assign(ref.data(), ref.data() + ref.size());
    report.fidelity = std::norm(overlap);
    return report;
}

}  // namespace weaktension
