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
 * @file experiment.hpp
 * @brief Multi-seed benchmark runs: per-seed data sampling, training, and
 *        test accuracy aggregation.
 */

#pragma once

#include <iosfwd>

#include "sqk/datasets.hpp"
#include "sqk/metric_learning.hpp"
#include "sqk/qct.hpp"

namespace sqk {

/**
 * @brief Classification methods the harness can run.
 *
 * RbfSvm: SVM with the plain RBF kernel. MetricLearnFidelity: learn
 * (r, theta), classify by mean overlap against each class.
 * MetricLearnSvm: learn (r, theta), train an SVM with the learned kernel.
 * QctSqueezed: two-stage refinement with squeezed factor bumps.
 * QctRbf: the same refinement with isotropic bumps (r = 0).
 */
enum class Method {
    RbfSvm,
    MetricLearnFidelity,
    MetricLearnSvm,
    QctSqueezed,
    QctRbf,
};

/** @brief Full description of one benchmark run. */
struct ExperimentConfig {
    Task task = Task::Ring;
    Method method = Method::RbfSvm;
    std::size_t n_seeds = 50;
    std::uint64_t master_seed = 1;
    std::size_t n_train_per_class = 20;
    std::size_t n_test_total = 8;
    double gamma = 40.0;
    double box_c = 1000.0;
    LearnObjective objective = LearnObjective::HilbertSchmidt; ///< metric-learn methods
    QctConfig qct;                                             ///< qct methods

    /**
     * Throws std::invalid_argument on out-of-range values or an unsupported
     * method/task pairing: metric-learn methods run on Ring only, qct
     * methods on SquareCircle and Hypotrochoid only.
     */
    void validate() const;
};

/** @brief Outcome of one seed. */
struct SeedResult {
    std::size_t index = 0;     ///< 0-based position in the run
    std::uint64_t seed = 0;    ///< derived dataset seed hash64(master, index)
    double accuracy = 0.0;
    bool has_learned = false;  ///< true for metric-learn methods
    double r = 0.0;
    double theta = 0.0;
    double objective_value = 0.0;
};

/** @brief Aggregated run results. */
struct ExperimentResult {
    ExperimentConfig config;
    std::vector<SeedResult> seeds;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0; ///< sample standard deviation (n - 1)
    double wall_seconds = 0.0;
};

/**
 * @brief Run the configured method over n_seeds independently sampled
 *        datasets with seeds hash64(master_seed, i).
 *
 * Deterministic apart from wall_seconds. Fidelity and SVM variants of
 * metric learning see identical datasets and learned hyperparameters for a
 * given seed index because learning is deterministic.
 */
ExperimentResult run_experiment(const ExperimentConfig &config);

/** @brief Axis-aligned export window. */
struct GridWindow {
    double x1_min = -1.0, x1_max = 1.0;
    double x2_min = -1.0, x2_max = 1.0;
    std::size_t steps = 101; ///< grid points per axis, >= 2
};

/**
 * @brief Write decision values on a regular grid as CSV rows "x1,x2,f",
 *        steps^2 rows after one header line; row-major in x2, then x1.
 */
void export_boundary(const ScalarField &f, const GridWindow &window, std::ostream &out);

} // namespace sqk
