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

#include "sqk/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "sqk/rng.hpp"

namespace sqk {

namespace {

bool method_uses_qct(Method method) {
    return method == Method::QctSqueezed || method == Method::QctRbf;
}

bool method_learns(Method method) {
    return method == Method::MetricLearnFidelity || method == Method::MetricLearnSvm;
}

} // namespace

void ExperimentConfig::validate() const {
    if (n_seeds == 0) {
        throw std::invalid_argument("ExperimentConfig: n_seeds must be >= 1");
    }
    if (n_train_per_class == 0 || n_test_total == 0) {
        throw std::invalid_argument("ExperimentConfig: train and test sizes must be >= 1");
    }
    if (!(std::isfinite(gamma) && gamma > 0.0)) {
        throw std::invalid_argument("ExperimentConfig: gamma must be finite and > 0");
    }
    if (!(std::isfinite(box_c) && box_c > 0.0)) {
        throw std::invalid_argument("ExperimentConfig: box_c must be finite and > 0");
    }
    if (method_learns(method) && task != Task::Ring) {
        throw std::invalid_argument(
            "ExperimentConfig: metric-learning methods are defined for the ring task only");
    }
    if (method_uses_qct(method) && task == Task::Ring) {
        throw std::invalid_argument(
            "ExperimentConfig: the two-stage methods are defined for the boundary tasks only");
    }
    qct.validate();
}

ExperimentResult run_experiment(const ExperimentConfig &config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    ExperimentResult result;
    result.config = config;
    result.seeds.reserve(config.n_seeds);

    for (std::size_t i = 0; i < config.n_seeds; ++i) {
        SeedResult seed_result;
        seed_result.index = i;
        seed_result.seed = hash64(config.master_seed, i);

        TaskSpec task_spec;
        task_spec.task = config.task;
        task_spec.n_train_per_class = config.n_train_per_class;
        task_spec.n_test_total = config.n_test_total;
        task_spec.seed = seed_result.seed;
        const GeneratedData data = generate(task_spec);

        SvmTrainOptions train_opts;
        train_opts.box_c = config.box_c;

        switch (config.method) {
        case Method::RbfSvm: {
            const KernelSpec kernel{SqueezedKernelParams::rbf(config.gamma), std::nullopt};
            const SvmModel model = train(data.train, kernel, train_opts);
            seed_result.accuracy = accuracy(model, data.test);
            break;
        }
        case Method::MetricLearnFidelity:
        case Method::MetricLearnSvm: {
            LearnOptions learn_opts;
            learn_opts.gamma = config.gamma;
            learn_opts.objective = config.objective;
            const LearnedHyperparams learned = learn_hyperparams(data.train, learn_opts);
            seed_result.has_learned = true;
            seed_result.r = learned.r;
            seed_result.theta = learned.theta;
            seed_result.objective_value = learned.objective_value;
            const SqueezedKernelParams params =
                SqueezedKernelParams::polar_offset(config.gamma, learned.r, learned.theta);
            if (config.method == Method::MetricLearnFidelity) {
                std::size_t correct = 0;
                for (std::size_t t = 0; t < data.test.size(); ++t) {
                    if (fidelity_classify(data.test.points[t], data.train, params) ==
                        data.test.labels[t]) {
                        ++correct;
                    }
                }
                seed_result.accuracy =
                    static_cast<double>(correct) / static_cast<double>(data.test.size());
            } else {
                const SvmModel model = train(data.train, KernelSpec{params, std::nullopt}, train_opts);
                seed_result.accuracy = accuracy(model, data.test);
            }
            break;
        }
        case Method::QctSqueezed:
        case Method::QctRbf: {
            QctConfig qct_cfg = config.qct;
            qct_cfg.train = train_opts;
            if (config.method == Method::QctRbf) {
                qct_cfg.angle_rule = QctAngleRule::None;
                qct_cfg.r = 0.0;
            }
            const QctResult qct_result =
                qct_pipeline(data.train, SqueezedKernelParams::rbf(config.gamma), qct_cfg);
            seed_result.accuracy = accuracy(qct_result.stage2, data.test);
            break;
        }
        }
        result.seeds.push_back(seed_result);
    }

    double sum = 0.0;
    for (const SeedResult &s : result.seeds) {
        sum += s.accuracy;
    }
    const double n = static_cast<double>(result.seeds.size());
    result.mean_accuracy = sum / n;
    double ss = 0.0;
    for (const SeedResult &s : result.seeds) {
        const double d = s.accuracy - result.mean_accuracy;
        ss += d * d;
    }
    result.std_accuracy = result.seeds.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

void export_boundary(const ScalarField &field, const GridWindow &window, std::ostream &out) {
    if (window.steps < 2) {
        throw std::invalid_argument("export_boundary: need at least 2 grid steps per axis");
    }
    if (!(window.x1_max > window.x1_min) || !(window.x2_max > window.x2_min)) {
        throw std::invalid_argument("export_boundary: window must have positive extent");
    }
    out << "x1,x2,f\n";
    char buffer[128];
    for (std::size_t i = 0; i < window.steps; ++i) {
        const double x1 = window.x1_min + (window.x1_max - window.x1_min) *
                                              static_cast<double>(i) /
                                              static_cast<double>(window.steps - 1);
        for (std::size_t j = 0; j < window.steps; ++j) {
            const double x2 = window.x2_min + (window.x2_max - window.x2_min) *
                                                  static_cast<double>(j) /
                                                  static_cast<double>(window.steps - 1);
            const double f = field({x1, x2});
            std::snprintf(buffer, sizeof(buffer), "%.17g,%.17g,%.17g\n", x1, x2, f);
            out << buffer;
        }
    }
}

} // namespace sqk
