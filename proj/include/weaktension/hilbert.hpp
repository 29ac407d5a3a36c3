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

// Finite-dimensional Hilbert space primitives. Observables are always given in
// spectral form (eigenvalues plus an orthonormal eigenbasis), so no general
// Hermitian eigensolver is needed anywhere in the library.

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace weaktension {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Normalized pure state. Construction rescales the amplitudes to unit norm;
/// the global phase is kept as given.
class StateVector {
public:
    explicit StateVector(Vector amplitudes);
    StateVector(std::initializer_list<Complex> amplitudes);

    static StateVector basis(Index dim, Index k);
    /// Equal-weight superposition of all basis states.
    static StateVector uniform(Index dim);

    Index dim() const noexcept { return amplitudes_.size(); }
    const Vector& amplitudes() const noexcept { return amplitudes_; }
    Complex operator[](Index k) const { return amplitudes_(k); }

    /// Same ray, multiplied by exp(i*angle).
    StateVector with_phase(double angle) const;

private:
    Vector amplitudes_;
};

namespace states {
StateVector zero();
StateVector one();
StateVector plus();
StateVector minus();
StateVector plus_i();
StateVector minus_i();
}  // namespace states

struct DensityValidation {
    double hermiticity_violation = 0.0;
    double trace_violation = 0.0;
    double min_witness = 0.0;  ///< smallest <v|rho|v> over the probe set
    bool pass = false;
};

/// Checks Hermiticity, unit trace and positivity. Positivity is witnessed by
/// <v|rho|v> over basis vectors, pairwise superpositions and 32 seeded
/// pseudo-random probes rather than a full eigendecomposition.
DensityValidation validate_density(const Matrix& entries);

class DensityOperator {
public:
    /// Throws Errc::InvalidState unless validate_density passes.
    explicit DensityOperator(Matrix entries);

    static DensityOperator pure(const StateVector& state);
    /// Convex mixture; weights are renormalized and must be non-negative.
    static DensityOperator mixture(std::span<const double> weights,
                                   std::span<const StateVector> states);
    static DensityOperator maximally_mixed(Index dim);

    Index dim() const noexcept { return entries_.rows(); }
    const Matrix& entries() const noexcept { return entries_; }

private:
    Matrix entries_;
};

struct ObservableValidation {
    double orthonormality_violation = 0.0;
    double completeness_violation = 0.0;
    bool pass = false;
};

class SpectralObservable {
public:
    /// Requires one eigenvector per eigenvalue, all of the same dimension
    /// (Errc::DimensionMismatch otherwise). Orthonormality is recorded, not
    /// enforced; see validation().
    SpectralObservable(std::vector<double> eigenvalues, std::vector<StateVector> eigenbasis);

    Index dim() const noexcept { return static_cast<Index>(eigenvalues_.size()); }
    std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
    double eigenvalue(Index m) const { return eigenvalues_.at(static_cast<std::size_t>(m)); }
    const std::vector<StateVector>& eigenbasis() const noexcept { return eigenbasis_; }
    const StateVector& eigenvector(Index m) const { return eigenbasis_.at(static_cast<std::size_t>(m)); }

    /// Eigenvectors as columns.
    const Matrix& eigenvector_matrix() const noexcept { return columns_; }
    /// Dense sum_m A_m |m><m|.
    Matrix matrix() const;
    double max_abs_eigenvalue() const noexcept;

    const ObservableValidation& validation() const noexcept { return validation_; }
    bool is_valid() const noexcept { return validation_.pass; }

    /// Hash of the eigenbasis amplitudes (eigenvalues excluded), used to tie
    /// weak-conditional distributions to the basis they were computed in.
    std::uint64_t basis_fingerprint() const noexcept { return fingerprint_; }

private:
    std::vector<double> eigenvalues_;
    std::vector<StateVector> eigenbasis_;
    Matrix columns_;
    ObservableValidation validation_;
    std::uint64_t fingerprint_ = 0;
};

namespace observables {
SpectralObservable pauli_x();
SpectralObservable pauli_y();
SpectralObservable pauli_z();
/// "pauli_x", "pauli_y" or "pauli_z"; throws Errc::ValidationError otherwise.
SpectralObservable preset(std::string_view name);
}  // namespace observables

ObservableValidation validate_observable(const SpectralObservable& obs);

/// Strength of a unitary exp(-i phi A).
class UnitaryParameter {
public:
    /// Throws Errc::InvalidParameter on NaN or infinity.
    explicit UnitaryParameter(double phi);
    double value() const noexcept { return phi_; }

private:
    double phi_;
};

/// <a|b>, conjugating a.
Complex inner_product(const StateVector& a, const StateVector& b);

/// Dense exp(-i phi A) assembled from the spectral sum.
Matrix unitary(const SpectralObservable& obs, UnitaryParameter phi);

StateVector evolve(const StateVector& state, const SpectralObservable& obs, UnitaryParameter phi);
DensityOperator evolve(const DensityOperator& rho, const SpectralObservable& obs, UnitaryParameter phi);

/// |<f|i>|^2, clamped to [0, 1].
double transition_probability(const StateVector& initial, const StateVector& final_state);
/// <f|rho|f>, clamped to [0, 1].
double transition_probability(const DensityOperator& initial, const StateVector& final_state);

void require_same_dim(Index a, Index b, std::string_view context);

}  // namespace weaktension
