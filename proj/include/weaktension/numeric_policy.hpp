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

namespace weaktension {

/// Tolerances shared by every module.
struct NumericPolicy {
    double construction_tol = 1e-12;  ///< normalization, Hermiticity, trace
    double validation_tol = 1e-10;    ///< orthonormality, completeness
    double psd_tol = 1e-10;           ///< lowest admissible <v|rho|v>
    double overlap_floor = 1e-12;     ///< smallest usable post-selection probability
    double magnitude_floor = 1e-14;   ///< |p(m|if)| below this has no defined phase
};

/// The process-wide policy. Replace it before spawning work; it is read without locking.
const NumericPolicy& numeric_policy() noexcept;
void set_numeric_policy(const NumericPolicy& policy) noexcept;

}  // namespace weaktension
