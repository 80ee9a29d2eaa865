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

// sqk: command line front end of the squeezed-kernel learning library.
//
// Exit codes: 0 success, 1 runtime failure (numerics, convergence, I/O while
// writing), 2 configuration error (bad flags, bad files, bad names).

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sqk/experiment.hpp"
#include "sqk/serialize.hpp"

namespace {

struct KernelFlags {
    double gamma = 40.0;
    double r = 0.0;
    double phi = 0.0;
    double polar_theta = 0.0;
    CLI::Option *polar_opt = nullptr;

    void attach(CLI::App *cmd) {
        cmd->add_option("--gamma", gamma, "Kernel scale gamma (> 0)")
            ->capture_default_str();
        cmd->add_option("--r", r, "Squeezing magnitude (>= 0)")->capture_default_str();
        cmd->add_option("--phi", phi, "Shared squeezing angle (fixed-angle policy)")
            ->capture_default_str();
        polar_opt = cmd->add_option("--polar-theta", polar_theta,
                                    "Use the polar-offset angle policy with this offset");
    }

    sqk::SqueezedKernelParams params() const {
        if (polar_opt != nullptr && polar_opt->count() > 0) {
            return sqk::SqueezedKernelParams::polar_offset(gamma, r, polar_theta);
        }
        return sqk::SqueezedKernelParams::fixed(gamma, r, phi);
    }
};

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    out << text;
    if (!out) {
        throw std::runtime_error("failed to write " + path);
    }
}

int run(int argc, char **argv) {
    CLI::App app{"Squeezed-kernel SVM learning toolkit"};
    app.require_subcommand(1);

    // ---- gen-data ----------------------------------------------------------
    auto *gen = app.add_subcommand("gen-data", "Sample a train/test split of a benchmark task");
    std::string gen_task;
    sqk::TaskSpec gen_spec;
    std::string gen_train_out, gen_test_out;
    gen->add_option("--task", gen_task, "ring | square_circle | hypotrochoid")->required();
    gen->add_option("--train-per-class", gen_spec.n_train_per_class, "Training points per class")
        ->capture_default_str();
    gen->add_option("--test-total", gen_spec.n_test_total, "Total test points (balanced)")
        ->capture_default_str();
    gen->add_option("--seed", gen_spec.seed, "Sampling seed")->capture_default_str();
    gen->add_option("--train-out", gen_train_out, "Training CSV path")->required();
    gen->add_option("--test-out", gen_test_out, "Test CSV path (omit to skip)");

    // ---- train --------------------------------------------------------------
    auto *train_cmd = app.add_subcommand("train", "Train an SVM on a labeled CSV");
    std::string train_data, train_model_out;
    KernelFlags train_kernel;
    sqk::SvmTrainOptions train_opts;
    train_cmd->add_option("--data", train_data, "Training CSV")->required();
    train_kernel.attach(train_cmd);
    train_cmd->add_option("--box-c", train_opts.box_c, "Dual box constraint C")
        ->capture_default_str();
    train_cmd->add_option("--kkt-tol", train_opts.kkt_tol, "Accepted KKT residual")
        ->capture_default_str();
    train_cmd->add_option("--max-sweeps", train_opts.max_sweeps, "Solver sweep budget")
        ->capture_default_str();
    train_cmd->add_option("--model-out", train_model_out, "Model JSON path")->required();

    // ---- learn --------------------------------------------------------------
    auto *learn_cmd =
        app.add_subcommand("learn", "Learn squeezing hyperparameters (r, theta) from data");
    std::string learn_data, learn_objective = "hilbert_schmidt", learn_out;
    double learn_gamma = 40.0;
    learn_cmd->add_option("--data", learn_data, "Training CSV")->required();
    learn_cmd->add_option("--gamma", learn_gamma, "Kernel scale gamma")->capture_default_str();
    learn_cmd->add_option("--objective", learn_objective, "hilbert_schmidt | fisher")
        ->capture_default_str();
    learn_cmd->add_option("--out", learn_out, "Learned-hyperparameter JSON path")->required();

    // ---- qct ----------------------------------------------------------------
    auto *qct_cmd =
        app.add_subcommand("qct", "Two-stage training with a quasi-conformal kernel factor");
    std::string qct_data, qct_rule = "boundary_aligned", qct_stage1_out, qct_stage2_out;
    double qct_gamma = 40.0;
    sqk::QctConfig qct_cfg;
    qct_cmd->add_option("--data", qct_data, "Training CSV")->required();
    qct_cmd->add_option("--gamma", qct_gamma, "Base kernel scale gamma")->capture_default_str();
    qct_cmd->add_option("--gamma-ratio", qct_cfg.gamma_ratio,
                        "Factor bump scale relative to gamma")
        ->capture_default_str();
    qct_cmd->add_option("--r", qct_cfg.r, "Squeezing magnitude of the factor bumps")
        ->capture_default_str();
    qct_cmd->add_option("--h0", qct_cfg.h0, "Constant offset of the factor")
        ->capture_default_str();
    qct_cmd->add_option("--angle-rule", qct_rule, "boundary_aligned | polar_offset | none")
        ->capture_default_str();
    qct_cmd->add_option("--box-c", qct_cfg.train.box_c, "Dual box constraint C of both stages")
        ->capture_default_str();
    qct_cmd->add_option("--stage1-out", qct_stage1_out, "Stage-1 model JSON path (omit to skip)");
    qct_cmd->add_option("--stage2-out", qct_stage2_out, "Stage-2 model JSON path")->required();

    // ---- experiment ---------------------------------------------------------
    auto *exp_cmd = app.add_subcommand("experiment", "Run a multi-seed benchmark from a config");
    std::string exp_config, exp_result_out, exp_table_out;
    exp_cmd->add_option("--config", exp_config, "Experiment config JSON")->required();
    exp_cmd->add_option("--result-out", exp_result_out, "Result JSON path")->required();
    exp_cmd->add_option("--seed-table-out", exp_table_out, "Per-seed CSV path (omit to skip)");

    // ---- boundary -----------------------------------------------------------
    auto *boundary_cmd =
        app.add_subcommand("boundary", "Export decision values of a model on a grid");
    std::string boundary_model, boundary_out;
    sqk::GridWindow window;
    boundary_cmd->add_option("--model", boundary_model, "Model JSON path")->required();
    boundary_cmd->add_option("--out", boundary_out, "Grid CSV path")->required();
    boundary_cmd->add_option("--x1-min", window.x1_min)->capture_default_str();
    boundary_cmd->add_option("--x1-max", window.x1_max)->capture_default_str();
    boundary_cmd->add_option("--x2-min", window.x2_min)->capture_default_str();
    boundary_cmd->add_option("--x2-max", window.x2_max)->capture_default_str();
    boundary_cmd->add_option("--steps", window.steps, "Grid points per axis")
        ->capture_default_str();

    // ---- estimate -----------------------------------------------------------
    auto *estimate_cmd = app.add_subcommand(
        "estimate", "Finite-shot estimates of all pairwise kernel values of a dataset");
    std::string estimate_data, estimate_out;
    KernelFlags estimate_kernel;
    std::uint64_t estimate_shots = 1000, estimate_master = 0;
    std::size_t estimate_max_points = 0;
    estimate_cmd->add_option("--data", estimate_data, "Points CSV")->required();
    estimate_kernel.attach(estimate_cmd);
    estimate_cmd->add_option("--shots", estimate_shots, "Shots per pair")->capture_default_str();
    estimate_cmd->add_option("--master-seed", estimate_master, "Master seed of the batch")
        ->capture_default_str();
    estimate_cmd->add_option("--max-points", estimate_max_points,
                             "Use only the first N points (0 = all)")
        ->capture_default_str();
    estimate_cmd->add_option("--out", estimate_out, "Estimates CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &error) {
        // app.exit prints help or the parse diagnostics; fold every parse
        // failure into exit code 2, keeping 0 for --help/--version.
        const int code = app.exit(error);
        return code == 0 ? 0 : 2;
    }

    if (gen->parsed()) {
        gen_spec.task = sqk::task_from_string(gen_task);
        const sqk::GeneratedData data = sqk::generate(gen_spec);
        sqk::save_dataset(data.train, gen_train_out);
        if (!gen_test_out.empty()) {
            sqk::save_dataset(data.test, gen_test_out);
        }
        std::printf("wrote %zu train and %zu test points\n", data.train.size(),
                    data.test.size());
        return 0;
    }

    if (train_cmd->parsed()) {
        const sqk::LabeledDataset data = sqk::load_dataset(train_data);
        const sqk::KernelSpec kernel{train_kernel.params(), std::nullopt};
        const sqk::SvmModel model = sqk::train(data, kernel, train_opts);
        sqk::save_model(model, train_model_out);
        std::printf("support_vectors=%zu training_accuracy=%.4f kkt_residual=%.3e\n",
                    model.svs.size(), sqk::accuracy(model, data), model.kkt_residual);
        return 0;
    }

    if (learn_cmd->parsed()) {
        const sqk::LabeledDataset data = sqk::load_dataset(learn_data);
        sqk::LearnOptions options;
        options.gamma = learn_gamma;
        options.objective = sqk::objective_from_string(learn_objective);
        const sqk::LearnedHyperparams learned = sqk::learn_hyperparams(data, options);
        nlohmann::json doc;
        doc["r"] = learned.r;
        doc["theta"] = learned.theta;
        doc["objective_value"] = learned.objective_value;
        doc["landscape_flat"] = learned.landscape_flat;
        write_text_file(learn_out, doc.dump(2) + "\n");
        std::printf("r=%.6f theta=%.6f objective=%.6e flat=%d\n", learned.r, learned.theta,
                    learned.objective_value, learned.landscape_flat ? 1 : 0);
        return 0;
    }

    if (qct_cmd->parsed()) {
        const sqk::LabeledDataset data = sqk::load_dataset(qct_data);
        qct_cfg.angle_rule = sqk::angle_rule_from_string(qct_rule);
        const sqk::QctResult result =
            sqk::qct_pipeline(data, sqk::SqueezedKernelParams::rbf(qct_gamma), qct_cfg);
        if (!qct_stage1_out.empty()) {
            sqk::save_model(result.stage1, qct_stage1_out);
        }
        sqk::save_model(result.stage2, qct_stage2_out);
        std::printf("stage1_svs=%zu stage2_svs=%zu stage2_training_accuracy=%.4f\n",
                    result.stage1.svs.size(), result.stage2.svs.size(),
                    sqk::accuracy(result.stage2, data));
        return 0;
    }

    if (exp_cmd->parsed()) {
        std::ifstream in(exp_config);
        if (!in) {
            throw std::invalid_argument("cannot open config " + exp_config);
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        const sqk::ExperimentConfig config = sqk::config_from_json(buffer.str());
        const sqk::ExperimentResult result = sqk::run_experiment(config);
        write_text_file(exp_result_out, sqk::result_to_json(result));
        if (!exp_table_out.empty()) {
            std::ofstream table(exp_table_out);
            sqk::write_seed_table_csv(result, table);
            if (!table) {
                throw std::runtime_error("failed to write " + exp_table_out);
            }
        }
        std::printf("task=%s method=%s seeds=%zu mean_accuracy=%.4f std_accuracy=%.4f "
                    "wall_seconds=%.2f\n",
                    sqk::to_string(config.task).c_str(), sqk::to_string(config.method).c_str(),
                    result.seeds.size(), result.mean_accuracy, result.std_accuracy,
                    result.wall_seconds);
        return 0;
    }

    if (boundary_cmd->parsed()) {
        const sqk::SvmModel model = sqk::load_model(boundary_model);
        std::ofstream out(boundary_out);
        if (!out) {
            throw std::runtime_error("failed to open " + boundary_out);
        }
        sqk::export_boundary(
            [&model](const sqk::Point2 &p) { return sqk::decision_value(model, p); }, window,
            out);
        if (!out) {
            throw std::runtime_error("failed to write " + boundary_out);
        }
        std::printf("wrote %zu grid rows\n", window.steps * window.steps);
        return 0;
    }

    if (estimate_cmd->parsed()) {
        const sqk::LabeledDataset data = sqk::load_dataset(estimate_data);
        std::size_t n = data.size();
        if (estimate_max_points > 0 && estimate_max_points < n) {
            n = estimate_max_points;
        }
        const std::vector<sqk::Point2> points(data.points.begin(),
                                              data.points.begin() + static_cast<long>(n));
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                pairs.push_back({i, j});
            }
        }
        const auto estimates = sqk::estimate_kernel_batch(points, pairs, estimate_kernel.params(),
                                                          estimate_shots, estimate_master);
        std::ofstream out(estimate_out);
        if (!out) {
            throw std::runtime_error("failed to open " + estimate_out);
        }
        sqk::write_estimates_csv(estimates, out);
        if (!out) {
            throw std::runtime_error("failed to write " + estimate_out);
        }
        std::printf("wrote %zu pair estimates at %llu shots each\n", estimates.size(),
                    static_cast<unsigned long long>(estimate_shots));
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument &error) {
        std::fprintf(stderr, "configuration error: %s\n", error.what());
        return 2;
    } catch (const std::exception &error) {
        std::fprintf(stderr, "error: %s\n", error.what());
        return 1;
    }
}
