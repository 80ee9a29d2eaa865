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

#include "sqk/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace sqk {

namespace {

using nlohmann::json;

[[noreturn]] void bad_name(const char *what, const std::string &name) {
    throw std::invalid_argument(std::string("unknown ") + what + " name: \"" + name + "\"");
}

std::string policy_to_string(AnglePolicy policy) {
    return policy == AnglePolicy::Fixed ? "fixed" : "polar_offset";
}

AnglePolicy policy_from_string(const std::string &name) {
    if (name == "fixed") {
        return AnglePolicy::Fixed;
    }
    if (name == "polar_offset") {
        return AnglePolicy::PolarOffset;
    }
    bad_name("angle policy", name);
}

void check_keys(const json &j, std::initializer_list<const char *> allowed, const char *context) {
    if (!j.is_object()) {
        throw std::invalid_argument(std::string(context) + ": expected a JSON object");
    }
    for (const auto &item : j.items()) {
        bool known = false;
        for (const char *key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw std::invalid_argument(std::string(context) + ": unknown key \"" + item.key() +
                                        "\"");
        }
    }
}

json params_to_json(const SqueezedKernelParams &params) {
    return {{"gamma", params.gamma},
            {"r", params.r},
            {"policy", policy_to_string(params.policy)},
            {"angle", params.angle}};
}

SqueezedKernelParams params_from_json(const json &j) {
    check_keys(j, {"gamma", "r", "policy", "angle"}, "kernel parameters");
    SqueezedKernelParams params;
    params.gamma = j.at("gamma").get<double>();
    params.r = j.at("r").get<double>();
    params.policy = policy_from_string(j.at("policy").get<std::string>());
    params.angle = j.at("angle").get<double>();
    return params;
}

json qfactor_to_json(const QFactorSpec &spec) {
    json centers = json::array();
    for (const SqueezeCenter &c : spec.centers) {
        centers.push_back({{"x1", c.center.x1},
                           {"x2", c.center.x2},
                           {"weight", c.weight},
                           {"r", c.r},
                           {"phi", c.phi}});
    }
    return {{"h0", spec.h0}, {"gamma_prime", spec.gamma_prime}, {"centers", std::move(centers)}};
}

QFactorSpec qfactor_from_json(const json &j) {
    check_keys(j, {"h0", "gamma_prime", "centers"}, "q factor");
    QFactorSpec spec;
    spec.h0 = j.at("h0").get<double>();
    spec.gamma_prime = j.at("gamma_prime").get<double>();
    for (const json &cj : j.at("centers")) {
        check_keys(cj, {"x1", "x2", "weight", "r", "phi"}, "q factor center");
        SqueezeCenter c;
        c.center = {cj.at("x1").get<double>(), cj.at("x2").get<double>()};
        c.weight = cj.at("weight").get<double>();
        c.r = cj.at("r").get<double>();
        c.phi = cj.at("phi").get<double>();
        spec.centers.push_back(c);
    }
    return spec;
}

json kernel_to_json(const KernelSpec &kernel) {
    json j = {{"base", params_to_json(kernel.base)}};
    j["qfactor"] = kernel.qfactor.has_value() ? qfactor_to_json(*kernel.qfactor) : json(nullptr);
    return j;
}

KernelSpec kernel_from_json(const json &j) {
    check_keys(j, {"base", "qfactor"}, "kernel");
    KernelSpec kernel;
    kernel.base = params_from_json(j.at("base"));
    if (j.contains("qfactor") && !j.at("qfactor").is_null()) {
        kernel.qfactor = qfactor_from_json(j.at("qfactor"));
    }
    return kernel;
}

json config_to_json_obj(const ExperimentConfig &config) {
    return {{"task", to_string(config.task)},
            {"method", to_string(config.method)},
            {"n_seeds", config.n_seeds},
            {"master_seed", config.master_seed},
            {"n_train_per_class", config.n_train_per_class},
            {"n_test_total", config.n_test_total},
            {"gamma", config.gamma},
            {"box_c", config.box_c},
            {"objective", to_string(config.objective)},
            {"qct",
             {{"h0", config.qct.h0},
              {"gamma_ratio", config.qct.gamma_ratio},
              {"r", config.qct.r},
              {"angle_rule", to_string(config.qct.angle_rule)}}}};
}

ExperimentConfig config_from_json_obj(const json &j) {
    check_keys(j,
               {"task", "method", "n_seeds", "master_seed", "n_train_per_class", "n_test_total",
                "gamma", "box_c", "objective", "qct"},
               "experiment config");
    ExperimentConfig config;
    if (j.contains("task")) {
        config.task = task_from_string(j.at("task").get<std::string>());
    }
    if (j.contains("method")) {
        config.method = method_from_string(j.at("method").get<std::string>());
    }
    config.n_seeds = j.value("n_seeds", config.n_seeds);
    config.master_seed = j.value("master_seed", config.master_seed);
    config.n_train_per_class = j.value("n_train_per_class", config.n_train_per_class);
    config.n_test_total = j.value("n_test_total", config.n_test_total);
    config.gamma = j.value("gamma", config.gamma);
    config.box_c = j.value("box_c", config.box_c);
    if (j.contains("objective")) {
        config.objective = objective_from_string(j.at("objective").get<std::string>());
    }
    if (j.contains("qct")) {
        const json &q = j.at("qct");
        check_keys(q, {"h0", "gamma_ratio", "r", "angle_rule"}, "qct config");
        config.qct.h0 = q.value("h0", config.qct.h0);
        config.qct.gamma_ratio = q.value("gamma_ratio", config.qct.gamma_ratio);
        config.qct.r = q.value("r", config.qct.r);
        if (q.contains("angle_rule")) {
            config.qct.angle_rule = angle_rule_from_string(q.at("angle_rule").get<std::string>());
        }
    }
    return config;
}

json parse_json(const std::string &text, const char *context) {
    try {
        return json::parse(text);
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string(context) + ": JSON parse failed: " + e.what());
    }
}

// Runs a document-to-struct conversion, turning library type/lookup errors
// (wrong value type, missing field) into std::invalid_argument with context.
template <typename Fn>
auto convert_json(const char *context, Fn &&fn) {
    try {
        return fn();
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string(context) + ": malformed document: " + e.what());
    }
}

std::string read_file(const std::string &path, const char *context) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument(std::string(context) + ": cannot open \"" + path + "\"");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string &path, const std::string &content, const char *context) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument(std::string(context) + ": cannot open \"" + path +
                                    "\" for writing");
    }
    out << content;
    if (!out) {
        throw std::runtime_error(std::string(context) + ": write to \"" + path + "\" failed");
    }
}

std::string format_double(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

} // namespace

std::string to_string(Task task) {
    switch (task) {
    case Task::Ring:
        return "ring";
    case Task::SquareCircle:
        return "square_circle";
    case Task::Hypotrochoid:
        return "hypotrochoid";
    }
    throw std::invalid_argument("to_string: unknown task");
}

std::string to_string(Method method) {
    switch (method) {
    case Method::RbfSvm:
        return "rbf_svm";
    case Method::MetricLearnFidelity:
        return "metric_learn_fidelity";
    case Method::MetricLearnSvm:
        return "metric_learn_svm";
    case Method::QctSqueezed:
        return "qct_squeezed";
    case Method::QctRbf:
        return "qct_rbf";
    }
    throw std::invalid_argument("to_string: unknown method");
}

std::string to_string(LearnObjective objective) {
    return objective == LearnObjective::HilbertSchmidt ? "hilbert_schmidt" : "fisher";
}

std::string to_string(QctAngleRule rule) {
    switch (rule) {
    case QctAngleRule::BoundaryAligned:
        return "boundary_aligned";
    case QctAngleRule::PolarOffset:
        return "polar_offset";
    case QctAngleRule::None:
        return "none";
    }
    throw std::invalid_argument("to_string: unknown angle rule");
}

Task task_from_string(const std::string &name) {
    if (name == "ring") {
        return Task::Ring;
    }
    if (name == "square_circle") {
        return Task::SquareCircle;
    }
    if (name == "hypotrochoid") {
        return Task::Hypotrochoid;
    }
    bad_name("task", name);
}

Method method_from_string(const std::string &name) {
    if (name == "rbf_svm") {
        return Method::RbfSvm;
    }
    if (name == "metric_learn_fidelity") {
        return Method::MetricLearnFidelity;
    }
    if (name == "metric_learn_svm") {
        return Method::MetricLearnSvm;
    }
    if (name == "qct_squeezed") {
        return Method::QctSqueezed;
    }
    if (name == "qct_rbf") {
        return Method::QctRbf;
    }
    bad_name("method", name);
}

LearnObjective objective_from_string(const std::string &name) {
    if (name == "hilbert_schmidt") {
        return LearnObjective::HilbertSchmidt;
    }
    if (name == "fisher") {
        return LearnObjective::Fisher;
    }
    bad_name("objective", name);
}

QctAngleRule angle_rule_from_string(const std::string &name) {
    if (name == "boundary_aligned") {
        return QctAngleRule::BoundaryAligned;
    }
    if (name == "polar_offset") {
        return QctAngleRule::PolarOffset;
    }
    if (name == "none") {
        return QctAngleRule::None;
    }
    bad_name("angle rule", name);
}

std::string model_to_json(const SvmModel &model) {
    json svs = json::array();
    for (const SupportVector &sv : model.svs) {
        svs.push_back({{"x1", sv.point.x1}, {"x2", sv.point.x2}, {"label", sv.label},
                       {"alpha", sv.alpha}});
    }
    const json j = {{"format", "sqkernel-model-v1"},
                    {"kernel", kernel_to_json(model.kernel)},
                    {"bias", model.bias},
                    {"box_c", model.box_c},
                    {"kkt_residual", model.kkt_residual},
                    {"pair_updates", model.pair_updates},
                    {"support_vectors", std::move(svs)}};
    return j.dump(2) + "\n";
}

SvmModel model_from_json(const std::string &text) {
    const json j = parse_json(text, "model");
    return convert_json("model", [&] {
        check_keys(j,
                   {"format", "kernel", "bias", "box_c", "kkt_residual", "pair_updates",
                    "support_vectors"},
                   "model");
        if (j.value("format", "") != "sqkernel-model-v1") {
            throw std::invalid_argument("model: missing or unsupported format tag");
        }
        SvmModel model;
        model.kernel = kernel_from_json(j.at("kernel"));
        model.bias = j.at("bias").get<double>();
        model.box_c = j.at("box_c").get<double>();
        model.kkt_residual = j.value("kkt_residual", 0.0);
        model.pair_updates = j.value("pair_updates", std::uint64_t{0});
        for (const json &sj : j.at("support_vectors")) {
            check_keys(sj, {"x1", "x2", "label", "alpha"}, "support vector");
            SupportVector sv;
            sv.point = {sj.at("x1").get<double>(), sj.at("x2").get<double>()};
            sv.label = sj.at("label").get<int>();
            sv.alpha = sj.at("alpha").get<double>();
            model.svs.push_back(sv);
        }
        return model;
    });
}

void save_model(const SvmModel &model, const std::string &path) {
    write_file(path, model_to_json(model), "save_model");
}

SvmModel load_model(const std::string &path) {
    return model_from_json(read_file(path, "load_model"));
}

void write_dataset_csv(const LabeledDataset &data, std::ostream &out) {
    data.validate();
    out << "x1,x2,label\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        out << format_double(data.points[i].x1) << ',' << format_double(data.points[i].x2) << ','
            << data.labels[i] << '\n';
    }
}

LabeledDataset read_dataset_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("dataset CSV: empty input");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "x1,x2,label") {
        throw std::invalid_argument("dataset CSV: expected header \"x1,x2,label\"");
    }
    LabeledDataset data;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        double x1 = 0.0;
        double x2 = 0.0;
        int label = 0;
        char extra = '\0';
        if (std::sscanf(line.c_str(), "%lf,%lf,%d%c", &x1, &x2, &label, &extra) != 3) {
            throw std::invalid_argument("dataset CSV: malformed row at line " +
                                        std::to_string(line_no));
        }
        data.points.push_back({x1, x2});
        data.labels.push_back(label);
    }
    data.validate();
    return data;
}

void save_dataset(const LabeledDataset &data, const std::string &path) {
    std::ostringstream out;
    write_dataset_csv(data, out);
    write_file(path, out.str(), "save_dataset");
}

LabeledDataset load_dataset(const std::string &path) {
    std::istringstream in(read_file(path, "load_dataset"));
    return read_dataset_csv(in);
}

std::string config_to_json(const ExperimentConfig &config) {
    return config_to_json_obj(config).dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string &text) {
    const json j = parse_json(text, "experiment config");
    return convert_json("experiment config", [&] { return config_from_json_obj(j); });
}

std::string result_to_json(const ExperimentResult &result) {
    json seeds = json::array();
    for (const SeedResult &s : result.seeds) {
        json row = {{"index", s.index}, {"seed", s.seed}, {"accuracy", s.accuracy}};
        if (s.has_learned) {
            row["learned"] = {{"r", s.r}, {"theta", s.theta},
                              {"objective_value", s.objective_value}};
        } else {
            row["learned"] = nullptr;
        }
        seeds.push_back(std::move(row));
    }
    const json j = {{"config", config_to_json_obj(result.config)},
                    {"seeds", std::move(seeds)},
                    {"mean_accuracy", result.mean_accuracy},
                    {"std_accuracy", result.std_accuracy},
                    {"wall_seconds", result.wall_seconds}};
    return j.dump(2) + "\n";
}

ExperimentResult result_from_json(const std::string &text) {
    const json j = parse_json(text, "experiment result");
    return convert_json("experiment result", [&] {
        check_keys(j, {"config", "seeds", "mean_accuracy", "std_accuracy", "wall_seconds"},
                   "experiment result");
        ExperimentResult result;
        result.config = config_from_json_obj(j.at("config"));
        for (const json &sj : j.at("seeds")) {
            check_keys(sj, {"index", "seed", "accuracy", "learned"}, "seed result");
            SeedResult s;
            s.index = sj.at("index").get<std::size_t>();
            s.seed = sj.at("seed").get<std::uint64_t>();
            s.accuracy = sj.at("accuracy").get<double>();
            if (sj.contains("learned") && !sj.at("learned").is_null()) {
                const json &lj = sj.at("learned");
                check_keys(lj, {"r", "theta", "objective_value"}, "learned hyperparameters");
                s.has_learned = true;
                s.r = lj.at("r").get<double>();
                s.theta = lj.at("theta").get<double>();
                s.objective_value = lj.at("objective_value").get<double>();
            }
            result.seeds.push_back(s);
        }
        result.mean_accuracy = j.at("mean_accuracy").get<double>();
        result.std_accuracy = j.at("std_accuracy").get<double>();
        result.wall_seconds = j.at("wall_seconds").get<double>();
        return result;
    });
}

void write_seed_table_csv(const ExperimentResult &result, std::ostream &out) {
    out << "seed_index,seed,accuracy,r,theta\n";
    for (const SeedResult &s : result.seeds) {
        out << s.index << ',' << s.seed << ',' << format_double(s.accuracy) << ',';
        if (s.has_learned) {
            out << format_double(s.r) << ',' << format_double(s.theta);
        } else {
            out << ',';
        }
        out << '\n';
    }
}

void write_estimates_csv(const std::vector<PairEstimate> &estimates, std::ostream &out) {
    out << "i,j,estimate,shots\n";
    for (const PairEstimate &e : estimates) {
        out << e.i << ',' << e.j << ',' << format_double(e.estimate) << ',' << e.shots << '\n';
    }
}

} // namespace sqk
