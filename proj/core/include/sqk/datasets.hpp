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
 * @file datasets.hpp
 * @brief Synthetic 2D benchmark tasks sampled by seeded rejection.
 */

#pragma once

#include <cstdint>
#include <functional>

#include "sqk/rng.hpp"
#include "sqk/svm.hpp"

namespace sqk {

/**
 * @brief The three benchmark tasks.
 *
 * Ring: ambient box [-1, 1]^2; class A is the annulus with radii
 * sqrt(1/3) <= |x| <= sqrt(2/3) (the radii split the box area in thirds),
 * class B the rest of the box.
 *
 * SquareCircle: class B is the disk of radius sqrt(1/3) at the origin,
 * class A the square [-0.8, 0.8]^2 minus that disk.
 *
 * Hypotrochoid: class A is the region enclosed by the curve with
 * R = 0.15, r = d = 0.1; class B lies outside it but inside the curve with
 * R = 0.36, r = d = 0.24.
 */
enum class Task {
    Ring,
    SquareCircle,
    Hypotrochoid,
};

/** @brief Sampling request: class sizes for training, total size for test. */
struct TaskSpec {
    Task task = Task::Ring;
    std::size_t n_train_per_class = 20;
    std::size_t n_test_total = 8; ///< split evenly; odd totals give A one extra
    std::uint64_t seed = 0;

    void validate() const;
};

/** @brief One sampled train/test split. */
struct GeneratedData {
    LabeledDataset train;
    LabeledDataset test;
};

/**
 * @brief Point-in-region test for the hypotrochoid
 *        x(t) = (R - r) cos t + d cos((R - r)/r t),
 *        y(t) = (R - r) sin t - d sin((R - r)/r t),
 *        traced as a 4096-segment polyline over one closed period and
 *        queried by even-odd crossing counting.
 */
bool hypotrochoid_contains(double big_r, double small_r, double d, const Point2 &p);

/// Class of a point under a task: +1 (A), -1 (B), or 0 (in neither region).
int task_label(Task task, const Point2 &p);

/**
 * @brief Sample train and test sets for a task.
 *
 * Points are drawn uniformly from each class region by rejection from its
 * bounding box, in the fixed order train A, train B, test A, test B from a
 * single xoshiro256++ stream seeded with spec.seed. Identical specs
 * reproduce identical datasets.
 */
GeneratedData generate(const TaskSpec &spec);

/**
 * @brief Rejection-sample one point of {p in box : accept(p)}.
 *
 * `box` is {x1_min, x1_max, x2_min, x2_max}. Throws std::runtime_error
 * after 10^7 rejected draws (empty or negligible acceptance region).
 */
Point2 sample_region(const std::function<bool(const Point2 &)> &accept, const double (&box)[4],
                     Xoshiro256pp &rng);

} // namespace sqk
