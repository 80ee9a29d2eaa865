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
 * @file metric_learning.hpp
 * @brief Ensemble statistics of encoded classes and kernel hyperparameter
 *        learning by class-separation objectives.
 *
 * The two classes of a dataset, encoded as uniform mixtures of kernel
 * feature states, are summarized by three Gram averages: the purity of each
 * class mixture and the overlap between them. Scatter traces, the Fisher
 * score, and the Hilbert-Schmidt distance are closed functions of these
 * averages, and the squeezing hyperparameters (r, theta) of a polar-offset
 * kernel are learned by maximizing one of the separation objectives.
 */

#pragma once

#include <numbers>

#include "sqk/svm.hpp"

namespace sqk {

/**
 * @brief Gram averages of a two-class dataset.
 *
 * purity_a = mean of k over A x A pairs (diagonal included), likewise
 * purity_b; overlap_ab = mean of k over A x B pairs. All lie in (0, 1] and
 * obey overlap_ab <= sqrt(purity_a * purity_b) up to roundoff.
 */
struct EnsembleStats {
    double purity_a = 1.0;
    double purity_b = 1.0;
    double overlap_ab = 1.0;

    /// Throws std::runtime_error when a value leaves (0, 1] or the
    /// Cauchy-Schwarz bound is violated beyond 1e-10.
    void validate() const;
};

/// Gram averages of `data` under the kernel `params`; label +1 is class A.
EnsembleStats ensemble_stats(const LabeledDataset &data, const SqueezedKernelParams &params);

/** @brief Traces of the within/total/between class scatter operators. */
struct ScatterTraces {
    double within = 0.0;  ///< 2 - purity_a - purity_b
    double total = 0.0;   ///< 1 - purity of the full mixture
    double between = 0.0; ///< total - within
};

/// Scatter traces from Gram averages and class sizes.
ScatterTraces scatter_traces(const EnsembleStats &stats, std::size_t n_a, std::size_t n_b);

/**
 * @brief Fisher-style separation score
 *        (1 - overlap) / (2 (2 - purity_a - purity_b)) - 3/4.
 *
 * Throws std::runtime_error when purity_a + purity_b >= 2 - 1e-12: both
 * mixtures are pure and the within-class scatter vanishes.
 */
double fisher_score(const EnsembleStats &stats);

/// Hilbert-Schmidt distance purity_a + purity_b - 2 overlap, clipped to >= 0.
double hs_distance(const EnsembleStats &stats);

/**
 * @brief Mean-overlap classifier: sign of the difference between the average
 *        kernel value of x against class A and against class B (+1 on ties).
 */
int fidelity_classify(const Point2 &x, const LabeledDataset &references,
                      const SqueezedKernelParams &params);

enum class LearnObjective {
    HilbertSchmidt,
    Fisher,
};

/** @brief Search settings for learn_hyperparams. */
struct LearnOptions {
    double gamma = 1.0;
    LearnObjective objective = LearnObjective::HilbertSchmidt;
    double r_max = 2.0;            ///< coarse grid 0..r_max, step r_step
    double r_step = 0.1;
    double theta_step = std::numbers::pi / 36; ///< coarse grid -pi/2..pi/2
    double simplex_tol = 1e-8;     ///< stop when the simplex value spread drops below
    std::size_t simplex_max_iters = 200;
};

/** @brief Learned squeezing hyperparameters of the polar-offset kernel. */
struct LearnedHyperparams {
    double r = 0.0;
    double theta = 0.0;
    double objective_value = 0.0;
    bool landscape_flat = false; ///< objective constant across the coarse grid
};

/**
 * @brief Learn (r, theta) maximizing the chosen objective of the
 *        polar-offset kernel on `data`.
 *
 * Deterministic: a coarse grid scan (ties resolved toward lexicographically
 * smaller (r, theta)) followed by a Nelder-Mead refinement started at the
 * best cell, with r clamped to [0, r_max] and theta reported in
 * (-pi/2, pi/2]. A flat landscape skips refinement and returns the first
 * grid cell with the flag set. Throws std::runtime_error when the Fisher
 * objective is degenerate on the entire grid.
 */
LearnedHyperparams learn_hyperparams(const LabeledDataset &data, const LearnOptions &options);

} // namespace sqk
