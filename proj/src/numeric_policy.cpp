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

#include "weaktension/errors.hpp"
#include "weaktension/numeric_policy.hpp"

namespace weaktension {

namespace {
NumericPolicy g_policy{};
}

const NumericPolicy& numeric_policy() noexcept { return g_policy; }

void set_numeric_policy(const NumericPolicy& policy) noexcept { g_policy = policy; }

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::InvalidObservable: return "InvalidObservable";
        case Errc::InvalidState: return "InvalidState";
        case Errc::OrthogonalPostselection: return "OrthogonalPostselection";
        case Errc::BasisMismatch: return "BasisMismatch";
        case Errc::NotAQubit: return "NotAQubit";
        case Errc::DegenerateTriangle: return "DegenerateTriangle";
        case Errc::InvalidParameter: return "InvalidParameter";
        case Errc::OutOfGrid: return "OutOfGrid";
        case Errc::CouplingTooStrong: return "CouplingTooStrong";
        case Errc::DegenerateDesign: return "DegenerateDesign";
        case Errc::InsufficientData: return "InsufficientData";
        case Errc::DegenerateProbability: return "DegenerateProbability";
        case Errc::ParseError: return "ParseError";
        case Errc::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

}  // namespace weaktension
