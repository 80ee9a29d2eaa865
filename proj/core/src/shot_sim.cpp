// Copyright 2026 The sqkernel Authors
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

#include "sqk/shot_sim.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sqk/rng.hpp"

namespace sqk {

void ShotConfig::validate() const {
    if (shots == 0) {
        throw std::invalid_argument("ShotConfig: shots must be >= 1");
    }
}

double estimate_kernel(const Point2 &x, const Point2 &y, const SqueezedKernelParams &params,
                       const ShotConfig &cfg) {
    cfg.validate();
    const double p = kernel_exact(x, y, params);
    Xoshiro256pp rng(cfg.seed);
    std::uint64_t successes = 0;
    for (std::uint64_t s = 0; s < cfg.shots; ++s) {
        if (rng.next_double() < p) {
            ++successes;
        }
    }
    return static_cast<double>(successes) / static_cast<double>(cfg.shots);
}

double estimate_q_factor(const Point2 &x, const QFactorSpec &spec, const ShotConfig &cfg) {
    cfg.validate();
    spec.validate();
    if (spec.h0 != 0.0) {
        throw std::invalid_argument(
            "estimate_q_factor: only purely kernel-weighted q factors (h0 == 0) are samplable");
    }
    double total_weight = 0.0;
    std::vector<double> cumulative;
    cumulative.reserve(spec.centers.size());
    for (const SqueezeCenter &c : spec.centers) {
        total_weight += c.weight;
        cumulative.push_back(total_weight);
    }
    if (!(total_weight > 0.0)) {
        throw std::invalid_argument("estimate_q_factor: total center weight must be > 0");
    }
    std::vector<double> probs;
    probs.reserve(spec.centers.size());
    for (const SqueezeCenter &c : spec.centers) {
        probs.push_back(kernel_exact(
            c.center, x, SqueezedKernelParams::fixed(spec.gamma_prime, c.r, c.phi)));
    }

    Xoshiro256pp rng(cfg.seed);
    std::uint64_t successes = 0;
    for (std::uint64_t s = 0; s < cfg.shots; ++s) {
        const double target = rng.next_double() * total_weight;
        std::size_t pick = 0;
        while (pick + 1 < cumulative.size() && cumulative[pick] <= target) {
            ++pick;
        }
        if (rng.next_double() < probs[pick]) {
            ++successes;
        }
    }
    return total_weight * static_cast<double>(successes) / static_cast<double>(cfg.shots);
}

std::vector<PairEstimate> estimate_kernel_batch(std::span<const Point2> points,
                                                std::span<const std::pair<std::size_t, std::size_t>> pairs,
                                                const SqueezedKernelParams &params,
                                                std::uint64_t shots, std::uint64_t master_seed) {
    params.validate();
    std::vector<PairEstimate> estimates;
    estimates.reserve(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto [i, j] = pairs[p];
        if (i >= points.size() || j >= points.size()) {
            throw std::invalid_argument("estimate_kernel_batch: pair index out of range");
        }
        const ShotConfig cfg{shots, hash64(master_seed, p)};
        estimates.push_back({i, j, estimate_kernel(points[i], points[j], params, cfg), shots});
    }
    return estimates;
}

} // namespace sqk
