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

// Micro benchmarks of the hot paths: kernel evaluation, Gram assembly, SVM
// training, hyperparameter learning, and the two-stage pipeline.

#include <benchmark/benchmark.h>

#include <vector>

#include "sqk/datasets.hpp"
#include "sqk/experiment.hpp"
#include "sqk/metric_learning.hpp"
#include "sqk/qct.hpp"
#include "sqk/rng.hpp"

namespace {

std::vector<sqk::Point2> random_points(std::size_t n, std::uint64_t seed) {
    sqk::Xoshiro256pp rng(seed);
    std::vector<sqk::Point2> points;
    points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        points.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
    }
    return points;
}

void BM_KernelFixedAngle(benchmark::State &state) {
    const auto params = sqk::SqueezedKernelParams::fixed(40.0, 0.5, 0.3);
    const auto points = random_points(2, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sqk::kernel_exact(points[0], points[1], params));
    }
}
BENCHMARK(BM_KernelFixedAngle);

void BM_KernelPolarOffset(benchmark::State &state) {
    const auto params = sqk::SqueezedKernelParams::polar_offset(40.0, 0.5, 0.1);
    const auto points = random_points(2, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sqk::kernel_exact(points[0], points[1], params));
    }
}
BENCHMARK(BM_KernelPolarOffset);

void BM_GramMatrix200(benchmark::State &state) {
    const auto params = sqk::SqueezedKernelParams::polar_offset(40.0, 0.5, 0.1);
    const auto points = random_points(200, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sqk::gram_matrix(points, params));
    }
}
BENCHMARK(BM_GramMatrix200);

void BM_SvmTrainRing(benchmark::State &state) {
    const sqk::TaskSpec spec{sqk::Task::Ring, 20, 8, 42};
    const auto data = sqk::generate(spec);
    const sqk::KernelSpec kernel{sqk::SqueezedKernelParams::rbf(40.0), std::nullopt};
    for (auto _ : state) {
        benchmark::DoNotOptimize(sqk::train(data.train, kernel));
    }
}
BENCHMARK(BM_SvmTrainRing);

void BM_LearnHyperparams(benchmark::State &state) {
    const sqk::TaskSpec spec{sqk::Task::Ring, 20, 8, 42};
    const auto data = sqk::generate(spec);
    sqk::LearnOptions options;
    options.gamma = 40.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sqk::learn_hyperparams(data.train, options));
    }
}
BENCHMARK(BM_LearnHyperparams);

void BM_QctPipeline(benchmark::State &state) {
    const sqk::TaskSpec spec{sqk::Task::Hypotrochoid, 20, 8, 42};
    const auto data = sqk::generate(spec);
    sqk::QctConfig cfg;
    cfg.gamma_ratio = 4.0;
    cfg.r = 0.5;
    cfg.angle_rule = sqk::QctAngleRule::PolarOffset;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sqk::qct_pipeline(data.train, sqk::SqueezedKernelParams::rbf(100.0), cfg));
    }
}
BENCHMARK(BM_QctPipeline);

} // namespace

BENCHMARK_MAIN();
