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

#include "sqk/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sqk {

void LabeledDataset::validate() const {
    if (points.size() != labels.size()) {
        throw std::invalid_argument("LabeledDataset: points and labels must have equal length");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(std::isfinite(points[i].x1) && std::isfinite(points[i].x2))) {
            throw std::invalid_argument("LabeledDataset: coordinates must be finite");
        }
        if (labels[i] != 1 && labels[i] != -1) {
            throw std::invalid_argument("LabeledDataset: labels must be +1 or -1");
        }
    }
}

namespace {

struct WorkingPair {
    std::ptrdiff_t i = -1;
    std::ptrdiff_t j = -1;
    double gap = 0.0;
};

// Most-violating pair under the first-order selection rule. grad is the
// gradient of the dual objective 0.5 a^T Q a - e^T a.
WorkingPair select_pair(const std::vector<double> &alpha, const std::vector<double> &grad,
                        const std::vector<double> &y, double box_c) {
    const std::size_t n = alpha.size();
    WorkingPair pair;
    double up_max = -std::numeric_limits<double>::infinity();
    double low_min = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
        const double score = -y[t] * grad[t];
        const bool in_up = (y[t] > 0.0) ? (alpha[t] < box_c) : (alpha[t] > 0.0);
        const bool in_low = (y[t] > 0.0) ? (alpha[t] > 0.0) : (alpha[t] < box_c);
        if (in_up && score > up_max) {
            up_max = score;
            pair.i = static_cast<std::ptrdiff_t>(t);
        }
        if (in_low && score < low_min) {
            low_min = score;
            pair.j = static_cast<std::ptrdiff_t>(t);
        }
    }
    pair.gap = up_max - low_min;
    return pair;
}

double kkt_residual_impl(const std::vector<double> &alpha, const std::vector<double> &margins,
                         double box_c, double sv_threshold) {
    double worst = 0.0;
    for (std::size_t t = 0; t < alpha.size(); ++t) {
        double violation = 0.0;
        if (alpha[t] <= sv_threshold) {
            violation = std::max(0.0, 1.0 - margins[t]);
        } else if (alpha[t] >= box_c * (1.0 - 1e-12)) {
            violation = std::max(0.0, margins[t] - 1.0);
        } else {
            violation = std::abs(margins[t] - 1.0);
        }
        worst = std::max(worst, violation);
    }
    return worst;
}

} // namespace

SvmModel train(const LabeledDataset &data, const KernelSpec &kernel, const SvmTrainOptions &opts) {
    data.validate();
    kernel.validate();
    if (!(std::isfinite(opts.box_c) && opts.box_c > 0.0)) {
        throw std::invalid_argument("SvmTrainOptions: box_c must be finite and > 0");
    }
    if (!(std::isfinite(opts.kkt_tol) && opts.kkt_tol > 0.0)) {
        throw std::invalid_argument("SvmTrainOptions: kkt_tol must be finite and > 0");
    }
    if (!(opts.sv_threshold >= 0.0) || opts.max_sweeps == 0) {
        throw std::invalid_argument("SvmTrainOptions: sv_threshold must be >= 0 and max_sweeps > 0");
    }

    const std::size_t n = data.size();
    bool has_pos = false;
    bool has_neg = false;
    for (int label : data.labels) {
        (label > 0 ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg) {
        throw std::invalid_argument("train: training data must contain both classes");
    }

    const GramMatrix gram = gram_matrix(std::span<const Point2>(data.points), kernel);
    std::vector<double> y(n);
    for (std::size_t t = 0; t < n; ++t) {
        y[t] = static_cast<double>(data.labels[t]);
    }

    const double box_c = opts.box_c;
    // Pair optimality gap tighter than the target residual so that the bias
    // midpoint keeps every KKT violation below kkt_tol.
    const double gap_tol = std::min(1e-6, 0.1 * opts.kkt_tol);
    constexpr double kTau = 1e-12;

    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0);
    const std::uint64_t max_updates = static_cast<std::uint64_t>(opts.max_sweeps) * n;
    std::uint64_t updates = 0;
    bool converged = false;

    while (updates < max_updates) {
        const WorkingPair pair = select_pair(alpha, grad, y, box_c);
        if (pair.i < 0 || pair.j < 0 || pair.gap < gap_tol) {
            converged = true;
            break;
        }
        const std::size_t i = static_cast<std::size_t>(pair.i);
        const std::size_t j = static_cast<std::size_t>(pair.j);
        const double old_ai = alpha[i];
        const double old_aj = alpha[j];

        double quad = gram.at(i, i) + gram.at(j, j) - 2.0 * gram.at(i, j);
        if (quad <= 0.0) {
            quad = kTau;
        }

        if (y[i] != y[j]) {
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0.0) {
                if (alpha[j] < 0.0) {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else {
                if (alpha[i] < 0.0) {
                    alpha[i] = 0.0;
                    alpha[j] = -diff;
                }
            }
            if (diff > 0.0) {
                if (alpha[i] > box_c) {
                    alpha[i] = box_c;
                    alpha[j] = box_c - diff;
                }
            } else {
                if (alpha[j] > box_c) {
                    alpha[j] = box_c;
                    alpha[i] = box_c + diff;
                }
            }
        } else {
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > box_c) {
                if (alpha[i] > box_c) {
                    alpha[i] = box_c;
                    alpha[j] = sum - box_c;
                }
            } else {
                if (alpha[j] < 0.0) {
                    alpha[j] = 0.0;
                    alpha[i] = sum;
                }
            }
            if (sum > box_c) {
                if (alpha[j] > box_c) {
                    alpha[j] = box_c;
                    alpha[i] = sum - box_c;
                }
            } else {
                if (alpha[i] < 0.0) {
                    alpha[i] = 0.0;
                    alpha[j] = sum;
                }
            }
        }

        const double delta_i = alpha[i] - old_ai;
        const double delta_j = alpha[j] - old_aj;
        for (std::size_t t = 0; t < n; ++t) {
            grad[t] += y[t] * (y[i] * gram.at(t, i) * delta_i + y[j] * gram.at(t, j) * delta_j);
        }
        ++updates;
    }

    // Bias from the stationarity values -y_t grad_t. Margin support vectors
    // pin it exactly; otherwise take the midpoint of the feasible interval.
    double bias = 0.0;
    {
        double free_sum = 0.0;
        std::size_t free_count = 0;
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n; ++t) {
            const double score = -y[t] * grad[t];
            if (alpha[t] > opts.sv_threshold && alpha[t] < box_c) {
                free_sum += score;
                ++free_count;
            } else if ((y[t] > 0.0 && alpha[t] <= opts.sv_threshold) ||
                       (y[t] < 0.0 && alpha[t] >= box_c)) {
                lo = std::max(lo, score);
            } else {
                hi = std::min(hi, score);
            }
        }
        if (free_count > 0) {
            bias = free_sum / static_cast<double>(free_count);
        } else if (std::isfinite(lo) && std::isfinite(hi)) {
            bias = 0.5 * (lo + hi);
        } else if (std::isfinite(lo)) {
            bias = lo;
        } else if (std::isfinite(hi)) {
            bias = hi;
        }
    }

    // Residual over the full training set, before pruning: margins from the
    // gradient identity y_t f(x_t) = grad_t + 1 + y_t * bias.
    std::vector<double> margins(n);
    for (std::size_t t = 0; t < n; ++t) {
        margins[t] = grad[t] + 1.0 + y[t] * bias;
    }
    const double residual = kkt_residual_impl(alpha, margins, box_c, opts.sv_threshold);

    if (!converged) {
        std::ostringstream msg;
        msg << "train: no convergence within " << max_updates
            << " pair updates; KKT residual " << residual;
        throw std::runtime_error(msg.str());
    }

    SvmModel model;
    model.kernel = kernel;
    model.bias = bias;
    model.box_c = box_c;
    model.kkt_residual = residual;
    model.pair_updates = updates;
    for (std::size_t t = 0; t < n; ++t) {
        if (alpha[t] > opts.sv_threshold) {
            model.svs.push_back({data.points[t], data.labels[t], alpha[t]});
        }
    }
    return model;
}

double decision_value(const SvmModel &model, const Point2 &x) {
    double sum = model.bias;
    for (const SupportVector &sv : model.svs) {
        sum += sv.alpha * static_cast<double>(sv.label) * model.kernel.eval(sv.point, x);
    }
    return sum;
}

int predict(const SvmModel &model, const Point2 &x) {
    return decision_value(model, x) >= 0.0 ? 1 : -1;
}

double accuracy(const SvmModel &model, const LabeledDataset &data) {
    data.validate();
    if (data.size() == 0) {
        throw std::invalid_argument("accuracy: dataset must not be empty");
    }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (predict(model, data.points[i]) == data.labels[i]) {
            ++correct;
        }
    }
    return static_cast<double>(correct) / static_cast<double>(data.size());
}

double kkt_residual(const SvmModel &model, const LabeledDataset &data) {
    data.validate();
    const std::size_t n = data.size();
    std::vector<double> alpha(n, 0.0);
    std::vector<double> margins(n);
    std::vector<bool> taken(model.svs.size(), false);
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t s = 0; s < model.svs.size(); ++s) {
            if (!taken[s] && model.svs[s].point == data.points[t] &&
                model.svs[s].label == data.labels[t]) {
                alpha[t] = model.svs[s].alpha;
                taken[s] = true;
                break;
            }
        }
        margins[t] = static_cast<double>(data.labels[t]) * decision_value(model, data.points[t]);
    }
    return kkt_residual_impl(alpha, margins, model.box_c, 0.0);
}

double dual_objective(const SvmModel &model) {
    double linear = 0.0;
    double quadratic = 0.0;
    for (const SupportVector &a : model.svs) {
        linear += a.alpha;
        for (const SupportVector &b : model.svs) {
            quadratic += a.alpha * b.alpha * static_cast<double>(a.label) *
                         static_cast<double>(b.label) * model.kernel.eval(a.point, b.point);
        }
    }
    return linear - 0.5 * quadratic;
}

} // namespace sqk
