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
 * @file serialize.hpp
 * @brief JSON and CSV interchange for models, datasets, configs, results.
 *
 * All floating point values survive a round trip exactly: JSON uses
 * shortest-round-trip number formatting and CSV writes 17 significant
 * digits.
 */

#pragma once

#include <iosfwd>
#include <string>

#include "sqk/experiment.hpp"
#include "sqk/shot_sim.hpp"

namespace sqk {

/// Name mapping of the enums used in files and on the command line.
std::string to_string(Task task);
std::string to_string(Method method);
std::string to_string(LearnObjective objective);
std::string to_string(QctAngleRule rule);
Task task_from_string(const std::string &name);
Method method_from_string(const std::string &name);
LearnObjective objective_from_string(const std::string &name);
QctAngleRule angle_rule_from_string(const std::string &name);

/// Trained model as a JSON document; loading reproduces decision values
/// exactly.
std::string model_to_json(const SvmModel &model);
SvmModel model_from_json(const std::string &text);
void save_model(const SvmModel &model, const std::string &path);
SvmModel load_model(const std::string &path);

/// Labeled points as CSV with header "x1,x2,label".
void write_dataset_csv(const LabeledDataset &data, std::ostream &out);
LabeledDataset read_dataset_csv(std::istream &in);
void save_dataset(const LabeledDataset &data, const std::string &path);
LabeledDataset load_dataset(const std::string &path);

/// Experiment configuration as JSON (keys mirror the CLI flags).
std::string config_to_json(const ExperimentConfig &config);
ExperimentConfig config_from_json(const std::string &text);

/// Run results: a JSON document and a per-seed CSV table
/// "seed_index,seed,accuracy,r,theta" (r and theta empty when not learned).
std::string result_to_json(const ExperimentResult &result);
ExperimentResult result_from_json(const std::string &text);
void write_seed_table_csv(const ExperimentResult &result, std::ostream &out);

/// Batch kernel estimates as CSV with header "i,j,estimate,shots".
void write_estimates_csv(const std::vector<PairEstimate> &estimates, std::ostream &out);

} // namespace sqk
