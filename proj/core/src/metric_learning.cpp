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

#include "sqk/metric_learning.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace sqk {

void EnsembleStats::validate() const {
    const auto in_unit = [](double v) { return std::isfinite(v) && v > 0.0 && v <= 1.0; };
    if (!in_unit(purity_a) || !in_unit(purity_b) || !in_unit(overlap_ab)) {
        throw std::runtime_error("EnsembleStats: purities and overlap must lie in (0, 1]");
    }
    if (overlap_ab > std::sqrt(purity_a * purity_b) + 1e-10) {
        throw std::runtime_error("EnsembleStats: overlap exceeds the Cauchy-Schwarz bound");
    }
}

EnsembleStats ensemble_stats(const LabeledDataset &data, const SqueezedKernelParams &params) {
    data.validate();
    params.validate();
    std::vector<const Point2 *> a;
    std::vector<const Point2 *> b;
    for (std::size_t i = 0; i < data.size(); ++i) {
        (data.labels[i] > 0 ? a : b).push_back(&data.points[i]);
    }
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("ensemble_stats: both classes must be present");
    }

    // Grand mean of the class Gram block, diagonal included.
    const auto block_mean = [&params](const std::vector<const Point2 *> &pts) {
        const std::size_t n = pts.size();
        double off = 0.0;
        double diag = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            diag += kernel_exact(*pts[i], *pts[i], params);
            for (std::size_t j = i + 1; j < n; ++j) {
                off += kernel_exact(*pts[i], *pts[j], params);
            }
        }
        return (diag + 2.0 * off) / (static_cast<double>(n) * static_cast<double>(n));
    };

    EnsembleStats stats;
    stats.purity_a = block_mean(a);
    stats.purity_b = block_mean(b);
    double cross = 0.0;
    for (const Point2 *pa : a) {
        for (const Point2 *pb : b) {
            cross += kernel_exact(*pa, *pb, params);
        }
    }
    stats.overlap_ab = cross / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
    stats.validate();
    return stats;
}

ScatterTraces scatter_traces(const EnsembleStats &stats, std::size_t n_a, std::size_t n_b) {
    if (n_a == 0 || n_b == 0) {
        throw std::invalid_argument("scatter_traces: class sizes must be positive");
    }
    const double na = static_cast<double>(n_a);
    const double nb = static_cast<double>(n_b);
    const double n = na + nb;
    ScatterTraces traces;
    traces.within = 2.0 - stats.purity_a - stats.purity_b;
    traces.total = 1.0 - (na * na * stats.purity_a + 2.0 * na * nb * stats.overlap_ab +
                          nb * nb * stats.purity_b) /
                             (n * n);
    traces.between = traces.total - traces.within;
    return traces;
}

double fisher_score(const EnsembleStats &stats) {
    const double within = 2.0 - stats.purity_a - stats.purity_b;
    if (within <= 1e-12) {
        throw std::runtime_error("fisher_score: within-class scatter is degenerate");
    }
    return (1.0 - stats.overlap_ab) / (2.0 * within) - 0.75;
}

double hs_distance(const EnsembleStats &stats) {
    const double d = stats.purity_a + stats.purity_b - 2.0 * stats.overlap_ab;
    if (d < -1e-12) {
        throw std::runtime_error("hs_distance: negative beyond roundoff");
    }
    return std::max(d, 0.0);
}

int fidelity_classify(const Point2 &x, const LabeledDataset &references,
                      const SqueezedKernelParams &params) {
    references.validate();
    params.validate();
    double sum_a = 0.0;
    double sum_b = 0.0;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
    for (std::size_t i = 0; i < references.size(); ++i) {
        const double k = kernel_exact(x, references.points[i], params);
        if (references.labels[i] > 0) {
            sum_a += k;
            ++n_a;
        } else {
            sum_b += k;
            ++n_b;
        }
    }
    if (n_a == 0 || n_b == 0) {
        throw std::invalid_argument("fidelity_classify: both classes must be present");
    }
    const double diff = sum_a / static_cast<double>(n_a) - sum_b / static_cast<double>(n_b);
    return diff >= 0.0 ? 1 : -1;
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double wrap_theta(double theta) {
    const double pi = std::numbers::pi;
    while (theta > 0.5 * pi) {
        theta -= pi;
    }
    while (theta <= -0.5 * pi) {
        theta += pi;
    }
    return theta;
}

} // namespace

LearnedHyperparams learn_hyperparams(const LabeledDataset &data, const LearnOptions &opts) {
    data.validate();
    if (!(std::isfinite(opts.gamma) && opts.gamma > 0.0)) {
        throw std::invalid_argument("LearnOptions: gamma must be finite and > 0");
    }
    if (!(opts.r_max > 0.0) || !(opts.r_step > 0.0) || !(opts.theta_step > 0.0)) {
        throw std::invalid_argument("LearnOptions: grid steps and r_max must be > 0");
    }

    const auto objective = [&](double r, double theta) {
        const double r_clamped = std::clamp(r, 0.0, opts.r_max);
        const SqueezedKernelParams params =
            SqueezedKernelParams::polar_offset(opts.gamma, r_clamped, theta);
        const EnsembleStats stats = ensemble_stats(data, params);
        if (opts.objective == LearnObjective::Fisher) {
            if (stats.purity_a + stats.purity_b >= 2.0 - 1e-12) {
                // Degenerate cell: within-class scatter vanishes.
                return kNegInf;
            }
            return fisher_score(stats);
        }
        return hs_distance(stats);
    };

    const double pi = std::numbers::pi;
    const std::size_t n_r = static_cast<std::size_t>(std::llround(opts.r_max / opts.r_step)) + 1;
    const std::size_t n_theta = static_cast<std::size_t>(std::llround(pi / opts.theta_step)) + 1;

    double best_value = kNegInf;
    double best_r = 0.0;
    double best_theta = -0.5 * pi;
    double grid_min = std::numeric_limits<double>::infinity();
    double grid_max = kNegInf;
    std::size_t evaluated = 0;

    for (std::size_t ir = 0; ir < n_r; ++ir) {
        const double r = std::min(static_cast<double>(ir) * opts.r_step, opts.r_max);
        for (std::size_t it = 0; it < n_theta; ++it) {
            const double theta = -0.5 * pi + static_cast<double>(it) * opts.theta_step;
            const double value = objective(r, theta);
            ++evaluated;
            if (value == kNegInf) {
                continue;
            }
            grid_min = std::min(grid_min, value);
            grid_max = std::max(grid_max, value);
            if (value > best_value) {
                best_value = value;
                best_r = r;
                best_theta = theta;
            }
        }
    }

    if (best_value == kNegInf) {
        throw std::runtime_error(
            "learn_hyperparams: objective degenerate on every grid cell");
    }

    LearnedHyperparams result;
    if (grid_max - grid_min <= 1e-12) {
        // Featureless landscape: report the first grid cell and skip refinement.
        result.r = 0.0;
        result.theta = -0.5 * pi;
        result.objective_value = objective(result.r, result.theta);
        result.landscape_flat = true;
        return result;
    }

    // Nelder-Mead refinement from the best grid cell (reflection 1,
    // expansion 2, contraction 0.5, shrink 0.5).
    struct Vertex {
        double r;
        double theta;
        double value;
    };
    const auto make_vertex = [&](double r, double theta) {
        return Vertex{r, theta, objective(r, theta)};
    };
    std::array<Vertex, 3> simplex = {
        make_vertex(best_r, best_theta),
        make_vertex(best_r + 0.05 <= opts.r_max ? best_r + 0.05 : best_r - 0.05, best_theta),
        make_vertex(best_r, best_theta + 0.05),
    };

    const auto by_value_desc = [](const Vertex &a, const Vertex &b) { return a.value > b.value; };
    for (std::size_t iter = 0; iter < opts.simplex_max_iters; ++iter) {
        std::sort(simplex.begin(), simplex.end(), by_value_desc);
        if (simplex[0].value - simplex[2].value < opts.simplex_tol) {
            break;
        }
        const double cr = 0.5 * (simplex[0].r + simplex[1].r);
        const double ct = 0.5 * (simplex[0].theta + simplex[1].theta);
        const Vertex reflected = make_vertex(cr + (cr - simplex[2].r), ct + (ct - simplex[2].theta));
        if (reflected.value > simplex[0].value) {
            const Vertex expanded =
                make_vertex(cr + 2.0 * (cr - simplex[2].r), ct + 2.0 * (ct - simplex[2].theta));
            simplex[2] = expanded.value > reflected.value ? expanded : reflected;
        } else if (reflected.value > simplex[1].value) {
            simplex[2] = reflected;
        } else {
            const Vertex &against = reflected.value > simplex[2].value ? reflected : simplex[2];
            const Vertex contracted =
                make_vertex(cr + 0.5 * (against.r - cr), ct + 0.5 * (against.theta - ct));
            if (contracted.value > against.value) {
                simplex[2] = contracted;
            } else {
                simplex[1] = make_vertex(simplex[0].r + 0.5 * (simplex[1].r - simplex[0].r),
                                         simplex[0].theta + 0.5 * (simplex[1].theta - simplex[0].theta));
                simplex[2] = make_vertex(simplex[0].r + 0.5 * (simplex[2].r - simplex[0].r),
                                         simplex[0].theta + 0.5 * (simplex[2].theta - simplex[0].theta));
            }
        }
    }
    std::sort(simplex.begin(), simplex.end(), by_value_desc);

    result.r = std::clamp(simplex[0].r, 0.0, opts.r_max);
    result.theta = wrap_theta(simplex[0].theta);
    result.objective_value = objective(result.r, result.theta);
    result.landscape_flat = false;
    if (result.objective_value < best_value) {
        // Refinement may not beat the grid after clamping; keep the grid cell.
        result.r = best_r;
        result.theta = wrap_theta(best_theta);
        result.objective_value = objective(result.r, result.theta);
    }
    return result;
}

} // namespace sqk
