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

#include "sqk/datasets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace sqk {

namespace {

const double kRingInner = std::sqrt(1.0 / 3.0);
const double kRingOuter = std::sqrt(2.0 / 3.0);
constexpr double kSquareHalf = 0.8;
const double kDiskRadius = std::sqrt(1.0 / 3.0);

std::vector<Point2> hypotrochoid_polyline(double big_r, double small_r, double d) {
    constexpr std::size_t kSegments = 4096;
    std::vector<Point2> poly;
    poly.reserve(kSegments);
    const double ratio = (big_r - small_r) / small_r;
    for (std::size_t k = 0; k < kSegments; ++k) {
        const double t = 4.0 * std::numbers::pi * static_cast<double>(k) / kSegments;
        poly.push_back({(big_r - small_r) * std::cos(t) + d * std::cos(ratio * t),
                        (big_r - small_r) * std::sin(t) - d * std::sin(ratio * t)});
    }
    return poly;
}

bool polyline_contains(const std::vector<Point2> &poly, const Point2 &p) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point2 &a = poly[j];
        const Point2 &b = poly[i];
        if ((b.x2 > p.x2) != (a.x2 > p.x2)) {
            const double x_cross = b.x1 + (p.x2 - b.x2) * (a.x1 - b.x1) / (a.x2 - b.x2);
            if (p.x1 < x_cross) {
                inside = !inside;
            }
        }
    }
    return inside;
}

const std::vector<Point2> &inner_curve() {
    static const std::vector<Point2> poly = hypotrochoid_polyline(0.15, 0.1, 0.1);
    return poly;
}

const std::vector<Point2> &outer_curve() {
    static const std::vector<Point2> poly = hypotrochoid_polyline(0.36, 0.24, 0.24);
    return poly;
}

struct Box {
    double x1_min, x1_max, x2_min, x2_max;
    bool contains(const Point2 &p) const {
        return p.x1 >= x1_min && p.x1 <= x1_max && p.x2 >= x2_min && p.x2 <= x2_max;
    }
};

Box ambient_box(Task task) {
    switch (task) {
    case Task::Ring:
        return {-1.0, 1.0, -1.0, 1.0};
    case Task::SquareCircle:
        return {-kSquareHalf, kSquareHalf, -kSquareHalf, kSquareHalf};
    case Task::Hypotrochoid:
        return {-0.36, 0.36, -0.36, 0.36};
    }
    throw std::invalid_argument("ambient_box: unknown task");
}

} // namespace

bool hypotrochoid_contains(double big_r, double small_r, double d, const Point2 &p) {
    if (!(small_r > 0.0) || !(big_r > small_r) || !(d > 0.0) || !std::isfinite(big_r) ||
        !std::isfinite(d)) {
        throw std::invalid_argument("hypotrochoid_contains: need big_r > small_r > 0 and d > 0");
    }
    // The polyline spans two revolutions, which closes every curve in the
    // shipped family ((big_r - small_r) / small_r = 1/2).
    return polyline_contains(hypotrochoid_polyline(big_r, small_r, d), p);
}

int task_label(Task task, const Point2 &p) {
    const Box box = ambient_box(task);
    switch (task) {
    case Task::Ring: {
        if (!box.contains(p)) {
            return 0;
        }
        const double radius = std::hypot(p.x1, p.x2);
        return (radius >= kRingInner && radius <= kRingOuter) ? 1 : -1;
    }
    case Task::SquareCircle: {
        const double radius = std::hypot(p.x1, p.x2);
        if (radius <= kDiskRadius) {
            return -1;
        }
        return box.contains(p) ? 1 : 0;
    }
    case Task::Hypotrochoid: {
        if (polyline_contains(inner_curve(), p)) {
            return 1;
        }
        return polyline_contains(outer_curve(), p) ? -1 : 0;
    }
    }
    throw std::invalid_argument("task_label: unknown task");
}

void TaskSpec::validate() const {
    if (n_train_per_class == 0) {
        throw std::invalid_argument("TaskSpec: n_train_per_class must be >= 1");
    }
    if (n_test_total == 0) {
        throw std::invalid_argument("TaskSpec: n_test_total must be >= 1");
    }
}

Point2 sample_region(const std::function<bool(const Point2 &)> &accept, const double (&box)[4],
                     Xoshiro256pp &rng) {
    constexpr std::uint64_t kMaxDraws = 10000000;
    for (std::uint64_t attempt = 0; attempt < kMaxDraws; ++attempt) {
        const Point2 p{rng.uniform(box[0], box[1]), rng.uniform(box[2], box[3])};
        if (accept(p)) {
            return p;
        }
    }
    throw std::runtime_error("sample_region: rejection sampling exhausted its draw budget");
}

GeneratedData generate(const TaskSpec &spec) {
    spec.validate();
    Xoshiro256pp rng(spec.seed);
    const Box box = ambient_box(spec.task);
    const double bounds[4] = {box.x1_min, box.x1_max, box.x2_min, box.x2_max};

    const auto accept_a = [&spec](const Point2 &p) { return task_label(spec.task, p) == 1; };
    const auto accept_b = [&spec](const Point2 &p) { return task_label(spec.task, p) == -1; };

    GeneratedData data;
    const auto append = [&](LabeledDataset &set, const auto &accept, int label, std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) {
            set.points.push_back(sample_region(accept, bounds, rng));
            set.labels.push_back(label);
        }
    };

    const std::size_t test_a = (spec.n_test_total + 1) / 2;
    const std::size_t test_b = spec.n_test_total / 2;
    append(data.train, accept_a, 1, spec.n_train_per_class);
    append(data.train, accept_b, -1, spec.n_train_per_class);
    append(data.test, accept_a, 1, test_a);
    append(data.test, accept_b, -1, test_b);
    return data;
}

} // namespace sqk
