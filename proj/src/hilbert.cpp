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

#include "weaktension/hilbert.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "weaktension/errors.hpp"
#include "weaktension/numeric_policy.hpp"

namespace weaktension {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr std::uint64_t kProbeSeed = 0x5eed'0f'de'9517ULL;
constexpr int kRandomProbes = 32;

std::uint64_t fnv1a(std::uint64_t hash, std::uint64_t word) {
    for (int byte = 0; byte < 8; ++byte) {
        hash ^= (word >> (8 * byte)) & 0xffU;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

double probe(const Matrix& rho, const Vector& v) {
    return (v.adjoint() * rho * v)(0, 0).real();
}

}  // namespace

void require_same_dim(Index a, Index b, std::string_view context) {
    if (a != b) {
        throw Error(Errc::DimensionMismatch, std::string(context) + ": dimension " +
                                                 std::to_string(a) + " vs " + std::to_string(b));
    }
}

// ---------------------------------------------------------------- StateVector

StateVector::StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 2) {
        throw Error(Errc::InvalidState, "state needs at least two amplitudes");
    }
    if (!amplitudes_.allFinite()) {
        throw Error(Errc::InvalidState, "non-finite amplitude");
    }
    const double norm = amplitudes_.norm();
    if (!(norm > 0.0)) {
        throw Error(Errc::InvalidState, "zero vector cannot be normalized");
    }
    amplitudes_ /= norm;
}

StateVector::StateVector(std::initializer_list<Complex> amplitudes)
    : StateVector(Vector::Map(amplitudes.begin(), static_cast<Index>(amplitudes.size()))) {}

StateVector StateVector::basis(Index dim, Index k) {
    if (k < 0 || k >= dim) {
        throw Error(Errc::InvalidParameter, "basis index out of range");
    }
    Vector v = Vector::Zero(dim);
    v(k) = 1.0;
    return StateVector(std::move(v));
}

StateVector StateVector::uniform(Index dim) {
    if (dim < 2) {
        throw Error(Errc::InvalidState, "state needs at least two amplitudes");
    }
    return StateVector(Vector::Ones(dim));
}

StateVector StateVector::with_phase(double angle) const {
    return StateVector(Vector(amplitudes_ * std::polar(1.0, angle)));
}

namespace states {
StateVector zero() { return StateVector{1.0, 0.0}; }
StateVector one() { return StateVector{0.0, 1.0}; }
StateVector plus() { return StateVector{kInvSqrt2, kInvSqrt2}; }
StateVector minus() { return StateVector{kInvSqrt2, -kInvSqrt2}; }
StateVector plus_i() { return StateVector{kInvSqrt2, Complex(0.0, kInvSqrt2)}; }
StateVector minus_i() { return StateVector{kInvSqrt2, Complex(0.0, -kInvSqrt2)}; }
}  // namespace states

// ----------------------------------------------------------- DensityOperator

DensityValidation validate_density(const Matrix& entries) {
    const auto& policy = numeric_policy();
    DensityValidation report;
    const Index n = entries.rows();
    if (n < 2 || entries.cols() != n || !entries.allFinite()) {
        report.hermiticity_violation = std::numeric_limits<double>::infinity();
        return report;
    }

    report.hermiticity_violation = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    report.trace_violation = std::abs(entries.trace() - Complex(1.0));

    double lowest = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < n; ++j) {
        lowest = std::min(lowest, entries(j, j).real());
    }
    const Complex phases[] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    for (Index j = 0; j < n; ++j) {
        for (Index k = j + 1; k < n; ++k) {
            for (const Complex phase : phases) {
                Vector v = Vector::Zero(n);
                v(j) = kInvSqrt2;
                v(k) = kInvSqrt2 * phase;
                lowest = std::min(lowest, probe(entries, v));
            }
        }
    }
    std::mt19937_64 rng(kProbeSeed);
    std::normal_distribution<double> gauss;
    for (int t = 0; t < kRandomProbes; ++t) {
        Vector v(n);
        for (Index k = 0; k < n; ++k) {
            v(k) = Complex(gauss(rng), gauss(rng));
        }
        v.normalize();
        lowest = std::min(lowest, probe(entries, v));
    }
    report.min_witness = lowest;
    report.pass = report.hermiticity_violation <= policy.construction_tol &&
                  report.trace_violation <= policy.construction_tol &&
                  report.min_witness >= -policy.psd_tol;
    return report;
}

DensityOperator::DensityOperator(Matrix entries) : entries_(std::move(entries)) {
    const DensityValidation report = validate_density(entries_);
    if (!report.pass) {
        throw Error(Errc::InvalidState,
                    "density operator rejected (hermiticity " +
                        std::to_string(report.hermiticity_violation) + ", trace " +
                        std::to_string(report.trace_violation) + ", min witness " +
                        std::to_string(report.min_witness) + ")");
    }
}

DensityOperator DensityOperator::pure(const StateVector& state) {
    const Vector& v = state.amplitudes();
    return DensityOperator(v * v.adjoint());
}

DensityOperator DensityOperator::mixture(std::span<const double> weights,
                                         std::span<const StateVector> states) {
    if (weights.size() != states.size() || states.empty()) {
        throw Error(Errc::InvalidParameter, "mixture needs one weight per state");
    }
    double total = 0.0;
    for (const double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw Error(Errc::InvalidParameter, "mixture weights must be finite and non-negative");
        }
        total += w;
    }
    if (!(total > 0.0)) {
        throw Error(Errc::InvalidParameter, "mixture weights sum to zero");
    }
    const Index n = states.front().dim();
    Matrix rho = Matrix::Zero(n, n);
    for (std::size_t k = 0; k < states.size(); ++k) {
        require_same_dim(states[k].dim(), n, "mixture");
        const Vector& v = states[k].amplitudes();
        rho += (weights[k] / total) * (v * v.adjoint());
    }
    return DensityOperator(std::move(rho));
}

DensityOperator DensityOperator::maximally_mixed(Index dim) {
    if (dim < 2) {
        throw Error(Errc::InvalidState, "density operator needs dimension >= 2");
    }
    return DensityOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

// -------------------------------------------------------- SpectralObservable

SpectralObservable::SpectralObservable(std::vector<double> eigenvalues,
                                       std::vector<StateVector> eigenbasis)
    : eigenvalues_(std::move(eigenvalues)), eigenbasis_(std::move(eigenbasis)) {
    if (eigenbasis_.empty()) {
        throw Error(Errc::InvalidObservable, "empty eigenbasis");
    }
    if (eigenvalues_.size() != eigenbasis_.size()) {
        throw Error(Errc::DimensionMismatch, "observable needs one eigenvalue per eigenvector");
    }
    for (const double a : eigenvalues_) {
        if (!std::isfinite(a)) {
            throw Error(Errc::InvalidObservable, "non-finite eigenvalue");
        }
    }
    const Index n = dim();
    columns_.resize(n, n);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (Index m = 0; m < n; ++m) {
        const Vector& v = eigenbasis_[static_cast<std::size_t>(m)].amplitudes();
        require_same_dim(v.size(), n, "eigenbasis");
        columns_.col(m) = v;
        for (Index k = 0; k < n; ++k) {
            hash = fnv1a(hash, std::bit_cast<std::uint64_t>(v(k).real()));
            hash = fnv1a(hash, std::bit_cast<std::uint64_t>(v(k).imag()));
        }
    }
    fingerprint_ = hash;
    validation_ = validate_observable(*this);
}

Matrix SpectralObservable::matrix() const {
    const Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(eigenvalues_.data(), dim());
    return columns_ * a.asDiagonal() * columns_.adjoint();
}

double SpectralObservable::max_abs_eigenvalue() const noexcept {
    double best = 0.0;
    for (const double a : eigenvalues_) {
        best = std::max(best, std::abs(a));
    }
    return best;
}

ObservableValidation validate_observable(const SpectralObservable& obs) {
    const Matrix& v = obs.eigenvector_matrix();
    const Index n = obs.dim();
    const Matrix identity = Matrix::Identity(n, n);
    ObservableValidation report;
    report.orthonormality_violation = (v.adjoint() * v - identity).cwiseAbs().maxCoeff();
    report.completeness_violation = (v * v.adjoint() - identity).cwiseAbs().maxCoeff();
    const double tol = numeric_policy().validation_tol;
    report.pass = report.orthonormality_violation < tol && report.completeness_violation < tol;
    return report;
}

namespace observables {
SpectralObservable pauli_x() { return SpectralObservable({1.0, -1.0}, {states::plus(), states::minus()}); }
SpectralObservable pauli_y() { return SpectralObservable({1.0, -1.0}, {states::plus_i(), states::minus_i()}); }
SpectralObservable pauli_z() { return SpectralObservable({1.0, -1.0}, {states::zero(), states::one()}); }

SpectralObservable preset(std::string_view name) {
    if (name == "pauli_x") return pauli_x();
    if (name == "pauli_y") return pauli_y();
    if (name == "pauli_z") return pauli_z();
    throw Error(Errc::ValidationError, "unknown observable preset '" + std::string(name) + "'");
}
}  // namespace observables

// ---------------------------------------------------------------- operations

UnitaryParameter::UnitaryParameter(double phi) : phi_(phi) {
    if (!std::isfinite(phi)) {
        throw Error(Errc::InvalidParameter, "unitary parameter must be finite");
    }
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    require_same_dim(a.dim(), b.dim(), "inner_product");
    return a.amplitudes().dot(b.amplitudes());
}

Matrix unitary(const SpectralObservable& obs, UnitaryParameter phi) {
    if (!obs.is_valid()) {
        throw Error(Errc::InvalidObservable, "eigenbasis is not orthonormal and complete");
    }
    const Index n = obs.dim();
    Vector phases(n);
    for (Index m = 0; m < n; ++m) {
        phases(m) = std::polar(1.0, -phi.value() * obs.eigenvalue(m));
    }
    const Matrix& v = obs.eigenvector_matrix();
    return v * phases.asDiagonal() * v.adjoint();
}

StateVector evolve(const StateVector& state, const SpectralObservable& obs, UnitaryParameter phi) {
    require_same_dim(state.dim(), obs.dim(), "evolve");
    if (!obs.is_valid()) {
        throw Error(Errc::InvalidObservable, "eigenbasis is not orthonormal and complete");
    }
    if (phi.value() == 0.0) {
        return state;
    }
    const Matrix& v = obs.eigenvector_matrix();
    Vector coefficients = v.adjoint() * state.amplitudes();
    for (Index m = 0; m < obs.dim(); ++m) {
        coefficients(m) *= std::polar(1.0, -phi.value() * obs.eigenvalue(m));
    }
    return StateVector(Vector(v * coefficients));
}

DensityOperator evolve(const DensityOperator& rho, const SpectralObservable& obs, UnitaryParameter phi) {
    require_same_dim(rho.dim(), obs.dim(), "evolve");
    if (phi.value() == 0.0) {
        return rho;
    }
    const Matrix u = unitary(obs, phi);
    Matrix out = u * rho.entries() * u.adjoint();
    // Re-symmetrize away rounding so the result passes the construction check.
    out = 0.5 * (out + out.adjoint()).eval();
    out /= out.trace();
    return DensityOperator(std::move(out));
}

double transition_probability(const StateVector& initial, const StateVector& final_state) {
    return std::clamp(std::norm(inner_product(final_state, initial)), 0.0, 1.0);
}

double transition_probability(const DensityOperator& initial, const StateVector& final_state) {
    require_same_dim(initial.dim(), final_state.dim(), "transition_probability");
    const Vector& f = final_state.amplitudes();
    return std::clamp(probe(initial.entries(), f), 0.0, 1.0);
}

}  // namespace weaktension
