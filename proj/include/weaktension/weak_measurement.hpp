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

// Monte Carlo model of a weak measurement followed by post-selection.
//
// The meter is described by measurement operators E_mu = sqrt(w_mu)(1 + eps_mu A).
// Sampling always uses the exact Born-rule probabilities |<f|E_mu|i>|^2, so the
// first-order readout law w_mu(1 + 2 eps_mu Re A_w) is something the simulation
// tests rather than assumes.

#include <cstdint>
#include <string>
#include <vector>

#include "weaktension/hilbert.hpp"

namespace weaktension {

/// Largest admissible |eps_mu| * max|A_m|.
inline constexpr double kWeakCouplingLimit = 0.05;

class MeterModel {
public:
    /// Throws Errc::InvalidParameter unless weights are non-negative and sum to
    /// one, and the coupling has zero mean (sum_mu w_mu eps_mu = 0), all within 1e-12.
    MeterModel(std::vector<double> weights, std::vector<double> couplings,
               std::vector<std::string> labels = {});

    /// Two equally likely readouts with couplings +eps and -eps.
    static MeterModel symmetric(double eps);

    std::size_t size() const noexcept { return weights_.size(); }
    const std::vector<double>& weights() const noexcept { return weights_; }
    const std::vector<double>& couplings() const noexcept { return couplings_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

private:
    std::vector<double> weights_;
    std::vector<double> couplings_;
    std::vector<std::string> labels_;
};

/// Unconditioned readout law p(mu|i) = w_mu (1 + 2 eps_mu <i|A|i>).
std::vector<double> readout_distribution(const StateVector& initial, const SpectralObservable& obs,
                                         const MeterModel& meter);

/// Exact post-selected readout table |<f|E_mu|i>|^2 / sum_nu |<f|E_nu|i>|^2.
std::vector<double> readout_distribution(const StateVector& initial, const StateVector& final_state,
                                         const SpectralObservable& obs, const MeterModel& meter);

/// First-order post-selected law w_mu (1 + 2 eps_mu Re A_w).
std::vector<double> first_order_readout(const StateVector& initial, const StateVector& final_state,
                                        const SpectralObservable& obs, const MeterModel& meter);

struct PostselectedCounts {
    std::vector<std::uint64_t> counts;  ///< post-selected trials per readout
    std::uint64_t n_total = 0;
    std::uint64_t n_postselected = 0;

    bool operator==(const PostselectedCounts&) const = default;
};

/// Runs n trials of measure-then-post-select. Trials are split into fixed-size
/// chunks, each seeded from (seed, chunk index), so the result is identical for
/// any number of workers.
PostselectedCounts simulate_trials(const StateVector& initial, const StateVector& final_state,
                                   const SpectralObservable& obs, const MeterModel& meter,
                                   std::uint64_t n, std::uint64_t seed, unsigned workers = 1);

struct EstimateReport {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t n_total = 0;
    std::uint64_t n_postselected = 0;
};

/// Least-squares inversion of p(mu) = w_mu (1 + 2 eps_mu a), weighted by
/// 1/w_mu, which reduces to a = sum_mu eps_mu q_mu / (2 sum_mu w_mu eps_mu^2).
EstimateReport estimate_real_weak_value(const PostselectedCounts& counts, const MeterModel& meter);

/// [ln p(f;+delta) - ln p(f;-delta)] / (4 delta) from two Bernoulli batches of
/// n trials each.
EstimateReport estimate_imag_weak_value(const StateVector& initial, const StateVector& final_state,
                                        const SpectralObservable& obs, double delta_phi,
                                        std::uint64_t n, std::uint64_t seed);

}  // namespace weaktension
