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

#include "weaktension/tension.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "weaktension/errors.hpp"
#include "weaktension/numeric_policy.hpp"
#include "weaktension/weak_engine.hpp"

namespace weaktension {

namespace {

constexpr double kTriangleTol = 1e-10;
constexpr double kAreaMatchTol = 1e-9;

void require_qubit(const StateVector& s) {
    if (s.dim() != 2) {
        throw Error(Errc::NotAQubit, "expected a two-level state, got dimension " + std::to_string(s.dim()));
    }
}

double dot(const BlochVector& a, const BlochVector& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

BlochVector cross(const BlochVector& a, const BlochVector& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double distance(const BlochVector& a, const BlochVector& b) {
    return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

double wrap(double angle) {
    const double two_pi = 2.0 * std::numbers::pi;
    double r = std::remainder(angle, two_pi);
    if (r <= -std::numbers::pi) r += two_pi;
    return r;
}

// Multiplies the three overlaps in an order that depends only on their values,
// so cyclic relabelings give bit-identical products and reversal gives the
// exact conjugate.
Complex cyclic_product(Complex a, Complex b, Complex c) {
    std::array<Complex, 3> f{a, b, c};
    std::sort(f.begin(), f.end(), [](Complex x, Complex y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return std::abs(x.imag()) < std::abs(y.imag());
    });
    return (f[0] * f[1]) * f[2];
}

}  // namespace

const char* to_string(TensionClass c) noexcept {
    return c == TensionClass::paradoxical ? "paradoxical" : "classical_like";
}

TensionReport logical_tension(const StateVector& initial, const StateVector& intermediate,
                              const StateVector& final_state) {
    require_same_dim(initial.dim(), intermediate.dim(), "logical_tension");
    require_same_dim(initial.dim(), final_state.dim(), "logical_tension");
    const Complex fm = inner_product(final_state, intermediate);
    const Complex mi = inner_product(intermediate, initial);
    const Complex i_f = inner_product(initial, final_state);
    const double floor = numeric_policy().magnitude_floor;

    TensionReport report;
    report.degenerate = std::abs(fm) < floor || std::abs(mi) < floor || std::abs(i_f) < floor;
    if (!report.degenerate) {
        report.tension = principal_arg(cyclic_product(fm, mi, i_f));
    }
    report.magnitude_class = std::abs(report.tension) >= std::numbers::pi / 2.0
                                 ? TensionClass::paradoxical
                                 : TensionClass::classical_like;
    return report;
}

BlochVector bloch_vector(const StateVector& qubit) {
    require_qubit(qubit);
    const Complex a = qubit[0];
    const Complex b = qubit[1];
    const Complex coherence = std::conj(a) * b;
    BlochVector v{2.0 * coherence.real(), 2.0 * coherence.imag(), std::norm(a) - std::norm(b)};
    const double r = std::sqrt(dot(v, v));
    return {v.x / r, v.y / r, v.z / r};
}

double geodesic_triangle_area(const BlochVector& a, const BlochVector& b, const BlochVector& c) {
    const BlochVector pts[] = {a, b, c};
    for (int j = 0; j < 3; ++j) {
        for (int k = j + 1; k < 3; ++k) {
            const double d = distance(pts[j], pts[k]);
            if (d < kTriangleTol || 2.0 - d < kTriangleTol) {
                throw Error(Errc::DegenerateTriangle, "coincident or antipodal vertices");
            }
        }
    }
    // tan(Omega/2) = a.(b x c) / (1 + a.b + b.c + c.a)
    const double numerator = dot(a, cross(b, c));
    const double denominator = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
    return 2.0 * std::atan2(numerator, denominator);
}

QubitTensionConsistency qubit_tension_consistency(const StateVector& initial,
                                                  const StateVector& intermediate,
                                                  const StateVector& final_state) {
    require_qubit(initial);
    require_qubit(intermediate);
    require_qubit(final_state);
    const TensionReport report = logical_tension(initial, intermediate, final_state);

    QubitTensionConsistency out;
    out.tension = report.tension;
    const BlochVector vi = bloch_vector(initial);
    const BlochVector vm = bloch_vector(intermediate);
    const BlochVector vf = bloch_vector(final_state);
    if (distance(vi, vm) < kTriangleTol || distance(vm, vf) < kTriangleTol ||
        distance(vf, vi) < kTriangleTol) {
        out.half_area = 0.0;
        out.match = std::abs(out.tension) < kAreaMatchTol;
        return out;
    }
    out.half_area = 0.5 * geodesic_triangle_area(vi, vm, vf);
    out.match = std::abs(wrap(out.tension + out.half_area)) < kAreaMatchTol;
    return out;
}

double orthogonal_pair_tension_difference(const StateVector& initial, const StateVector& final_state,
                                          const SpectralObservable& basis) {
    require_qubit(initial);
    require_qubit(final_state);
    if (basis.dim() != 2) {
        throw Error(Errc::NotAQubit, "basis must be two-dimensional");
    }
    if (!basis.is_valid()) {
        throw Error(Errc::InvalidObservable, "eigenbasis is not orthonormal and complete");
    }
    const TensionReport first = logical_tension(initial, basis.eigenvector(0), final_state);
    const TensionReport second = logical_tension(initial, basis.eigenvector(1), final_state);
    return first.tension - second.tension;
}

}  // namespace weaktension
