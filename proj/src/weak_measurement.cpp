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

#include "weaktension/weak_measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "weaktension/errors.hpp"
#include "weaktension/numeric_policy.hpp"
#include "weaktension/weak_engine.hpp"

namespace weaktension {

namespace {

constexpr double kMeterTol = 1e-12;
constexpr std::uint64_t kChunkTrials = std::uint64_t{1} << 22;
constexpr std::uint64_t kMinPostselected = 100;

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index, std::uint64_t tag) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                      static_cast<std::uint32_t>(tag)};
    return std::mt19937_64(seq);
}

void require_weak(const SpectralObservable& obs, const MeterModel& meter) {
    const double scale = obs.max_abs_eigenvalue();
    for (const double eps : meter.couplings()) {
        if (std::abs(eps) * scale > kWeakCouplingLimit) {
            throw Error(Errc::CouplingTooStrong, "|eps * A_max| = " + std::to_string(std::abs(eps) * scale) +
                                                     " exceeds " + std::to_string(kWeakCouplingLimit));
        }
    }
}

// (1 + eps A)|i> for every readout, without the sqrt(w) factor.
std::vector<Vector> kicked_states(const StateVector& initial, const SpectralObservable& obs,
                                  const MeterModel& meter) {
    const Vector a_i = obs.matrix() * initial.amplitudes();
    std::vector<Vector> out;
    out.reserve(meter.size());
    for (const double eps : meter.couplings()) {
        out.emplace_back(initial.amplitudes() + eps * a_i);
    }
    return out;
}

// Multinomial draw by sequential conditional binomials.
void multinomial(std::mt19937_64& rng, std::uint64_t n, const std::vector<double>& probabilities,
                 std::vector<std::uint64_t>& out) {
    double remaining_mass = 1.0;
    std::uint64_t remaining = n;
    for (std::size_t k = 0; k < probabilities.size(); ++k) {
        if (remaining == 0) break;
        if (k + 1 == probabilities.size()) {
            out[k] += remaining;
            break;
        }
        const double q = remaining_mass > 0.0 ? std::clamp(probabilities[k] / remaining_mass, 0.0, 1.0) : 0.0;
        std::binomial_distribution<std::uint64_t> draw(remaining, q);
        const std::uint64_t hits = draw(rng);
        out[k] += hits;
        remaining -= hits;
        remaining_mass -= probabilities[k];
    }
}

}  // namespace

MeterModel::MeterModel(std::vector<double> weights, std::vector<double> couplings,
                       std::vector<std::string> labels)
    : weights_(std::move(weights)), couplings_(std::move(couplings)), labels_(std::move(labels)) {
    if (weights_.empty() || weights_.size() != couplings_.size()) {
        throw Error(Errc::InvalidParameter, "meter needs one coupling per readout weight");
    }
    if (labels_.empty()) {
        for (std::size_t k = 0; k < weights_.size(); ++k) labels_.push_back(std::to_string(k));
    } else if (labels_.size() != weights_.size()) {
        throw Error(Errc::InvalidParameter, "meter needs one label per readout");
    }
    double total = 0.0;
    double mean_coupling = 0.0;
    for (std::size_t k = 0; k < weights_.size(); ++k) {
        if (!(weights_[k] >= 0.0) || !std::isfinite(weights_[k]) || !std::isfinite(couplings_[k])) {
            throw Error(Errc::InvalidParameter, "meter weights must be non-negative and finite");
        }
        total += weights_[k];
        mean_coupling += weights_[k] * couplings_[k];
    }
    if (std::abs(total - 1.0) > kMeterTol) {
        throw Error(Errc::InvalidParameter, "meter weights must sum to 1");
    }
    if (std::abs(mean_coupling) > kMeterTol) {
        throw Error(Errc::InvalidParameter, "meter coupling must have zero mean");
    }
}

MeterModel MeterModel::symmetric(double eps) { return MeterModel({0.5, 0.5}, {eps, -eps}, {"+", "-"}); }

std::vector<double> readout_distribution(const StateVector& initial, const SpectralObservable& obs,
                                         const MeterModel& meter) {
    require_same_dim(initial.dim(), obs.dim(), "readout_distribution");
    require_weak(obs, meter);
    const double mean = initial.amplitudes().dot(obs.matrix() * initial.amplitudes()).real();
    std::vector<double> out(meter.size());
    for (std::size_t k = 0; k < meter.size(); ++k) {
        out[k] = meter.weights()[k] * (1.0 + 2.0 * meter.couplings()[k] * mean);
    }
    return out;
}

std::vector<double> readout_distribution(const StateVector& initial, const StateVector& final_state,
                                         const SpectralObservable& obs, const MeterModel& meter) {
    require_same_dim(initial.dim(), final_state.dim(), "readout_distribution");
    require_same_dim(initial.dim(), obs.dim(), "readout_distribution");
    require_weak(obs, meter);
    if (!(transition_probability(initial, final_state) > numeric_policy().overlap_floor)) {
        throw Error(Errc::OrthogonalPostselection, "readout_distribution: <f|i> vanishes");
    }
    const std::vector<Vector> kicked = kicked_states(initial, obs, meter);
    std::vector<double> out(meter.size());
    double total = 0.0;
    for (std::size_t k = 0; k < meter.size(); ++k) {
        out[k] = meter.weights()[k] * std::norm(final_state.amplitudes().dot(kicked[k]));
        total += out[k];
    }
    for (double& p : out) p /= total;
    return out;
}

std::vector<double> first_order_readout(const StateVector& initial, const StateVector& final_state,
                                        const SpectralObservable& obs, const MeterModel& meter) {
    require_weak(obs, meter);
    const double real_part = weak_value(initial, final_state, obs).real();
    std::vector<double> out(meter.size());
    for (std::size_t k = 0; k < meter.size(); ++k) {
        out[k] = meter.weights()[k] * (1.0 + 2.0 * meter.couplings()[k] * real_part);
    }
    return out;
}

PostselectedCounts simulate_trials(const StateVector& initial, const StateVector& final_state,
                                   const SpectralObservable& obs, const MeterModel& meter,
                                   std::uint64_t n, std::uint64_t seed, unsigned workers) {
    // Validates the inputs and the post-selection overlap.
    (void)readout_distribution(initial, final_state, obs, meter);

    // Joint table over (readout, passed post-selection): first the M passing
    // outcomes, then the M failing ones.
    const std::size_t readouts = meter.size();
    const std::vector<Vector> kicked = kicked_states(initial, obs, meter);
    std::vector<double> joint(2 * readouts);
    double total = 0.0;
    for (std::size_t k = 0; k < readouts; ++k) {
        const double w = meter.weights()[k];
        const double reached = w * kicked[k].squaredNorm();
        const double passed = std::min(reached, w * std::norm(final_state.amplitudes().dot(kicked[k])));
        joint[k] = passed;
        joint[readouts + k] = reached - passed;
        total += reached;
    }
    for (double& p : joint) p /= total;

    const std::uint64_t chunks = n == 0 ? 0 : (n + kChunkTrials - 1) / kChunkTrials;
    std::vector<std::vector<std::uint64_t>> per_chunk(chunks, std::vector<std::uint64_t>(2 * readouts, 0));
    auto run_chunks = [&](unsigned worker, unsigned stride) {
        for (std::uint64_t c = worker; c < chunks; c += stride) {
            const std::uint64_t size = std::min(kChunkTrials, n - c * kChunkTrials);
            auto rng = stream(seed, c, 0);
            multinomial(rng, size, joint, per_chunk[c]);
        }
    };
    const unsigned stride = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::uint64_t>(chunks, 1))));
    if (stride == 1) {
        run_chunks(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < stride; ++w) pool.emplace_back(run_chunks, w, stride);
    }

    PostselectedCounts out;
    out.counts.assign(readouts, 0);
    out.n_total = n;
    for (const auto& chunk : per_chunk) {
        for (std::size_t k = 0; k < readouts; ++k) out.counts[k] += chunk[k];
    }
    out.n_postselected = std::accumulate(out.counts.begin(), out.counts.end(), std::uint64_t{0});
    return out;
}

EstimateReport estimate_real_weak_value(const PostselectedCounts& counts, const MeterModel& meter) {
    if (counts.counts.size() != meter.size()) {
        throw Error(Errc::DimensionMismatch, "counts and meter have different readout sets");
    }
    const auto [lo, hi] = std::minmax_element(meter.couplings().begin(), meter.couplings().end());
    if (*lo == *hi) {
        throw Error(Errc::DegenerateDesign, "all couplings are equal; the readout carries no signal");
    }
    if (counts.n_postselected < kMinPostselected) {
        throw Error(Errc::InsufficientData, "need at least " + std::to_string(kMinPostselected) +
                                                " post-selected trials, got " +
                                                std::to_string(counts.n_postselected));
    }
    double spread = 0.0;
    for (std::size_t k = 0; k < meter.size(); ++k) {
        spread += meter.weights()[k] * meter.couplings()[k] * meter.couplings()[k];
    }
    const double n = static_cast<double>(counts.n_postselected);
    double mean = 0.0;
    double second = 0.0;
    for (std::size_t k = 0; k < meter.size(); ++k) {
        const double q = static_cast<double>(counts.counts[k]) / n;
        const double g = meter.couplings()[k] / (2.0 * spread);
        mean += q * g;
        second += q * g * g;
    }
    EstimateReport report;
    report.estimate = mean;
    report.std_error = std::sqrt(std::max(0.0, second - mean * mean) / n);
    report.n_total = counts.n_total;
    report.n_postselected = counts.n_postselected;
    return report;
}

EstimateReport estimate_imag_weak_value(const StateVector& initial, const StateVector& final_state,
                                        const SpectralObservable& obs, double delta_phi,
                                        std::uint64_t n, std::uint64_t seed) {
    if (!(delta_phi >= 1e-3 && delta_phi <= 0.1)) {
        throw Error(Errc::InvalidParameter, "delta_phi must lie in [1e-3, 0.1]");
    }
    if (n < kMinPostselected) {
        throw Error(Errc::InsufficientData, "need at least " + std::to_string(kMinPostselected) + " trials per batch");
    }
    if (!(transition_probability(initial, final_state) > numeric_policy().overlap_floor)) {
        throw Error(Errc::OrthogonalPostselection, "estimate_imag_weak_value: <f|i> vanishes");
    }
    const double sides[] = {delta_phi, -delta_phi};
    double log_p[2] = {0.0, 0.0};
    double variance = 0.0;
    std::uint64_t hits_total = 0;
    for (int side = 0; side < 2; ++side) {
        const double p = direct_response(initial, final_state, obs, sides[side]);
        auto rng = stream(seed, static_cast<std::uint64_t>(side), 1);
        std::binomial_distribution<std::uint64_t> draw(n, std::clamp(p, 0.0, 1.0));
        const std::uint64_t hits = draw(rng);
        if (hits == 0) {
            throw Error(Errc::DegenerateProbability, "no post-selected trials in a batch");
        }
        hits_total += hits;
        const double nn = static_cast<double>(n);
        log_p[side] = std::log(static_cast<double>(hits) / nn);
        // Delta method on a continuity-adjusted proportion keeps the error finite at p = 1.
        const double adjusted = (static_cast<double>(hits) + 0.5) / (nn + 1.0);
        variance += (1.0 - adjusted) / (nn * adjusted);
    }
    EstimateReport report;
    report.estimate = (log_p[0] - log_p[1]) / (4.0 * delta_phi);
    report.std_error = std::sqrt(variance) / (4.0 * delta_phi);
    report.n_total = 2 * n;
    report.n_postselected = hits_total;
    return report;
}

}  // namespace weaktension
