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
 * @file svm.hpp
 * @brief Soft-margin kernel SVM trained by deterministic pairwise dual ascent.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sqk/qfactor.hpp"

namespace sqk {

/** @brief Binary-labeled samples; labels are +1 or -1. */
struct LabeledDataset {
    std::vector<Point2> points;
    std::vector<int> labels;

    std::size_t size() const { return points.size(); }
    /// Throws std::invalid_argument on size mismatch or a label outside {-1, +1}.
    void validate() const;
};

/** @brief Solver options for train(). */
struct SvmTrainOptions {
    double box_c = 1000.0;        ///< upper bound on each dual weight
    double kkt_tol = 1e-5;        ///< accepted KKT residual of the returned model
    double sv_threshold = 1e-8;   ///< dual weights at or below this are pruned
    std::size_t max_sweeps = 50000; ///< sweep = n pair updates; exceeded -> error
};

/** @brief One retained support vector. */
struct SupportVector {
    Point2 point;
    int label = 1;
    double alpha = 0.0; ///< dual weight in (sv_threshold, box_c]
};

/**
 * @brief Trained classifier: decision value sum_i alpha_i y_i k(x_i, x) + bias.
 *
 * Only support vectors are stored; pruning a weight alpha <= sv_threshold
 * perturbs decision values by at most n_train * sv_threshold * max |k|.
 */
struct SvmModel {
    KernelSpec kernel;
    std::vector<SupportVector> svs;
    double bias = 0.0;
    double box_c = 1000.0;
    double kkt_residual = 0.0;   ///< residual achieved on the training set
    std::uint64_t pair_updates = 0; ///< dual pair updates spent by the solver
};

/**
 * @brief Train a soft-margin SVM on the dual problem
 *        max sum alpha - 1/2 alpha^T Q alpha, 0 <= alpha <= C, y^T alpha = 0.
 *
 * Sequential two-variable ascent; each step updates the pair with maximal
 * KKT violation (ties broken by lowest index), so training is deterministic.
 * Throws std::invalid_argument unless both classes are present, and
 * std::runtime_error when the residual has not reached kkt_tol within
 * max_sweeps sweeps (the message reports the residual reached).
 */
SvmModel train(const LabeledDataset &data, const KernelSpec &kernel,
               const SvmTrainOptions &options = {});

double decision_value(const SvmModel &model, const Point2 &x);

/// sign of the decision value, with sign(0) defined as +1.
int predict(const SvmModel &model, const Point2 &x);

/// Fraction of correct predictions. Throws std::invalid_argument when empty.
double accuracy(const SvmModel &model, const LabeledDataset &data);

/**
 * @brief Maximum KKT violation of the model over a dataset it was trained on:
 *        margin shortfall for alpha = 0 points, |margin - 1| for free support
 *        vectors, margin excess over 1 for box-active ones.
 */
double kkt_residual(const SvmModel &model, const LabeledDataset &train_data);

/// Dual objective recomputed from the stored support vectors.
double dual_objective(const SvmModel &model);

} // namespace sqk
