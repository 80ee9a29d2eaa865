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

/**
 * @file shot_sim.hpp
 * @brief Finite-shot estimation of kernel values and scaling factors.
 *
 * A kernel value k in (0, 1] is the success probability of a projective
 * overlap test, so an M-shot estimate is a Bernoulli(k) average. Streams are
 * seeded explicitly and batch estimates derive one child seed per pair, so
 * every estimate is reproducible.
 */

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sqk/qfactor.hpp"

namespace sqk {

/** @brief Shot budget and stream seed of one estimation. */
struct ShotConfig {
    std::uint64_t shots = 1;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument when shots == 0 (use the exact kernel
    /// functions for exact values).
    void validate() const;
};

/// M-shot Bernoulli estimate of kernel_exact(x, y, params).
double estimate_kernel(const Point2 &x, const Point2 &y, const SqueezedKernelParams &params,
                       const ShotConfig &cfg);

/**
 * @brief M-shot estimate of q(x) - h0 for a factor with h0 = 0.
 *
 * Each shot samples a center j with probability h_j / H (H = sum of
 * weights) and runs one overlap test against it; the estimate is H times
 * the success fraction, an unbiased estimator of sum_j h_j k_j(c_j, x).
 * Throws std::invalid_argument when spec.h0 != 0 (the offset is not
 * estimable by overlap tests).
 */
double estimate_q_factor(const Point2 &x, const QFactorSpec &spec, const ShotConfig &cfg);

/** @brief One batch row: estimate of k(points[i], points[j]). */
struct PairEstimate {
    std::size_t i = 0;
    std::size_t j = 0;
    double estimate = 0.0;
    std::uint64_t shots = 0;
};

/**
 * @brief Estimate a list of kernel entries with `shots` shots each.
 *
 * Pair p uses the derived seed hash64(master_seed, p), so results do not
 * depend on evaluation order and any single pair can be reproduced alone.
 */
std::vector<PairEstimate>
estimate_kernel_batch(std::span<const Point2> points,
                      std::span<const std::pair<std::size_t, std::size_t>> pairs,
                      const SqueezedKernelParams &params, std::uint64_t shots,
                      std::uint64_t master_seed);

} // namespace sqk
