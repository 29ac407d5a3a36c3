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

// Logical tension of a state triple: the Pancharatnam phase
//
//   S(i,m,f) = Arg(<f|m><m|i><i|f>)
//
// and its qubit realization as half the solid angle of the geodesic triangle
// spanned by the three Bloch vectors.

#include "weaktension/hilbert.hpp"

namespace weaktension {

enum class TensionClass {
    classical_like,  ///< |S| < pi/2
    paradoxical,     ///< |S| >= pi/2
};

const char* to_string(TensionClass c) noexcept;

struct TensionReport {
    double tension = 0.0;  ///< in (-pi, pi]
    TensionClass magnitude_class = TensionClass::classical_like;
    bool degenerate = false;  ///< some pairwise overlap vanished; tension reported as 0
};

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

TensionReport logical_tension(const StateVector& initial, const StateVector& intermediate,
                              const StateVector& final_state);

/// x = 2 Re(conj(a) b), y = 2 Im(conj(a) b), z = |a|^2 - |b|^2.
BlochVector bloch_vector(const StateVector& qubit);

/// Signed solid angle of the spherical triangle (a, b, c), positive when
/// a . (b x c) > 0. Range (-2 pi, 2 pi].
double geodesic_triangle_area(const BlochVector& a, const BlochVector& b, const BlochVector& c);

struct QubitTensionConsistency {
    double tension = 0.0;
    double half_area = 0.0;  ///< half of the signed solid angle of (i, m, f)
    bool match = false;      ///< tension == -half_area within 1e-9
};

/// Compares S(i,m,f) with the geodesic triangle. The orientation relation is
/// S(i,m,f) = -Omega(i,m,f)/2, with Omega signed by the ordered Bloch triple.
/// Coincident states short-circuit to tension 0 and half_area 0.
QubitTensionConsistency qubit_tension_consistency(const StateVector& initial,
                                                  const StateVector& intermediate,
                                                  const StateVector& final_state);

/// S(i,m0,f) - S(i,m1,f) for the two eigenvectors of a qubit observable.
double orthogonal_pair_tension_difference(const StateVector& initial, const StateVector& final_state,
                                          const SpectralObservable& basis);

}  // namespace weaktension
