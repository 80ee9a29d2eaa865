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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "sqk/datasets.hpp"
#include "sqk/metric_learning.hpp"
#include "sqk/rng.hpp"

using sqk::ensemble_stats;
using sqk::EnsembleStats;
using sqk::fidelity_classify;
using sqk::fisher_score;
using sqk::hs_distance;
using sqk::kernel_exact;
using sqk::LabeledDataset;
using sqk::learn_hyperparams;
using sqk::LearnObjective;
using sqk::LearnOptions;
using sqk::Point2;
using sqk::scatter_traces;
using sqk::SqueezedKernelParams;

namespace {

constexpr double kPi = std::numbers::pi;

LabeledDataset two_blob_dataset(sqk::Xoshiro256pp &rng, std::size_t per_class, double spread) {
    LabeledDataset data;
    for (std::size_t i = 0; i < per_class; ++i) {
        data.points.push_back({0.5 + rng.uniform(-spread, spread), rng.uniform(-spread, spread)});
        data.labels.push_back(1);
    }
    for (std::size_t i = 0; i < per_class; ++i) {
        data.points.push_back({-0.5 + rng.uniform(-spread, spread), rng.uniform(-spread, spread)});
        data.labels.push_back(-1);
    }
    return data;
}

// Direct Gram-average of the stats, by plain double loops over all ordered
// pairs (the implementation averages the triangle; this route is the oracle).
EnsembleStats direct_stats(const LabeledDataset &data, const SqueezedKernelParams &params) {
    std::vector<Point2> a;
    std::vector<Point2> b;
    for (std::size_t i = 0; i < data.size(); ++i) {
        (data.labels[i] > 0 ? a : b).push_back(data.points[i]);
    }
    EnsembleStats stats;
    double sum = 0.0;
    for (const auto &p : a) {
        for (const auto &q : a) {
            sum += kernel_exact(p, q, params);
        }
    }
    stats.purity_a = sum / (static_cast<double>(a.size()) * static_cast<double>(a.size()));
    sum = 0.0;
    for (const auto &p : b) {
        for (const auto &q : b) {
            sum += kernel_exact(p, q, params);
        }
    }
    stats.purity_b = sum / (static_cast<double>(b.size()) * static_cast<double>(b.size()));
    sum = 0.0;
    for (const auto &p : a) {
        for (const auto &q : b) {
            sum += kernel_exact(p, q, params);
        }
    }
    stats.overlap_ab = sum / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
    return stats;
}

} // namespace

TEST_SUITE("metric_learning") {

TEST_CASE("ensemble stats equal hand-computed gram averages") {
    // Two class-A points and one class-B point: closed forms in single
    // kernel values.
    LabeledDataset data;
    data.points = {{0.2, 0.1}, {-0.3, 0.4}, {0.0, -0.6}};
    data.labels = {1, 1, -1};
    const auto params = SqueezedKernelParams::polar_offset(3.0, 0.4, 0.2);

    const double k01 = kernel_exact(data.points[0], data.points[1], params);
    const double k02 = kernel_exact(data.points[0], data.points[2], params);
    const double k12 = kernel_exact(data.points[1], data.points[2], params);

    const EnsembleStats stats = ensemble_stats(data, params);
    CHECK(stats.purity_a == doctest::Approx((2.0 + 2.0 * k01) / 4.0).epsilon(1e-14));
    CHECK(stats.purity_b == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(stats.overlap_ab == doctest::Approx((k02 + k12) / 2.0).epsilon(1e-14));
}

TEST_CASE("ensemble stats match the direct double-loop oracle") {
    sqk::Xoshiro256pp rng(31);
    for (int t = 0; t < 5; ++t) {
        LabeledDataset data;
        const std::size_t n_a = 3 + (rng.next() % 5);
        const std::size_t n_b = 2 + (rng.next() % 7); // unbalanced on purpose
        for (std::size_t i = 0; i < n_a + n_b; ++i) {
            data.points.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
            data.labels.push_back(i < n_a ? 1 : -1);
        }
        const auto params = SqueezedKernelParams::polar_offset(
            rng.uniform(1.0, 50.0), rng.uniform(0.0, 1.0), rng.uniform(-kPi / 2, kPi / 2));
        const EnsembleStats got = ensemble_stats(data, params);
        const EnsembleStats want = direct_stats(data, params);
        CHECK(got.purity_a == doctest::Approx(want.purity_a).epsilon(1e-13));
        CHECK(got.purity_b == doctest::Approx(want.purity_b).epsilon(1e-13));
        CHECK(got.overlap_ab == doctest::Approx(want.overlap_ab).epsilon(1e-13));
    }
}

TEST_CASE("stats respect the cauchy-schwarz bound on random data") {
    sqk::Xoshiro256pp rng(32);
    for (int t = 0; t < 20; ++t) {
        LabeledDataset data = two_blob_dataset(rng, 4 + (rng.next() % 6), 0.4);
        const auto params = SqueezedKernelParams::polar_offset(
            rng.uniform(0.5, 60.0), rng.uniform(0.0, 1.5), rng.uniform(-kPi / 2, kPi / 2));
        const EnsembleStats stats = ensemble_stats(data, params); // validates internally
        CHECK(stats.overlap_ab <= std::sqrt(stats.purity_a * stats.purity_b) + 1e-10);
        CHECK(stats.purity_a > 0.0);
        CHECK(stats.purity_a <= 1.0);
        CHECK(stats.purity_b > 0.0);
        CHECK(stats.purity_b <= 1.0);
    }
}

TEST_CASE("identical ensembles: fisher -1/2 and hs distance 0") {
    sqk::Xoshiro256pp rng(33);
    LabeledDataset data;
    for (int i = 0; i < 6; ++i) {
        const Point2 p{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        data.points.push_back(p);
        data.labels.push_back(1);
        data.points.push_back(p); // same multiset with the other label
        data.labels.push_back(-1);
    }
    const auto params = SqueezedKernelParams::polar_offset(8.0, 0.5, 0.3);
    const EnsembleStats stats = ensemble_stats(data, params);
    CHECK(std::abs(stats.purity_a - stats.purity_b) <= 1e-14);
    CHECK(std::abs(stats.purity_a - stats.overlap_ab) <= 1e-14);
    CHECK(fisher_score(stats) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(hs_distance(stats) >= 0.0);
    CHECK(hs_distance(stats) <= 1e-12);
}

TEST_CASE("fisher score rejects a degenerate within-class scatter") {
    // Two singletons: both purities are exactly 1.
    LabeledDataset data;
    data.points = {{0.3, 0.0}, {-0.3, 0.0}};
    data.labels = {1, -1};
    const EnsembleStats stats = ensemble_stats(data, SqueezedKernelParams::rbf(1.0));
    CHECK(stats.purity_a == 1.0);
    CHECK(stats.purity_b == 1.0);
    CHECK_THROWS_AS(fisher_score(stats), std::runtime_error);
    // The hs distance remains well defined.
    CHECK(hs_distance(stats) > 0.0);
}

TEST_CASE("scatter traces: balanced compact form and decomposition") {
    sqk::Xoshiro256pp rng(34);
    for (int t = 0; t < 10; ++t) {
        LabeledDataset data = two_blob_dataset(rng, 8, 0.5);
        const auto params = SqueezedKernelParams::polar_offset(
            rng.uniform(1.0, 40.0), rng.uniform(0.0, 1.2), rng.uniform(-kPi / 2, kPi / 2));
        const EnsembleStats stats = ensemble_stats(data, params);
        const auto traces = scatter_traces(stats, 8, 8);

        // Balanced classes: between-trace collapses to
        // 3/4 (Pa + Pb) - O/2 - 1.
        const double compact =
            0.75 * (stats.purity_a + stats.purity_b) - 0.5 * stats.overlap_ab - 1.0;
        CHECK(traces.between == doctest::Approx(compact).epsilon(1e-12));
        CHECK(traces.total == doctest::Approx(traces.within + traces.between).epsilon(1e-12));
    }

    // Unbalanced classes: check the total against the direct grand-mean form.
    LabeledDataset data;
    sqk::Xoshiro256pp rng2(35);
    for (int i = 0; i < 5; ++i) {
        data.points.push_back({rng2.uniform(0.0, 1.0), rng2.uniform(-1.0, 0.0)});
        data.labels.push_back(1);
    }
    for (int i = 0; i < 9; ++i) {
        data.points.push_back({rng2.uniform(-1.0, 0.0), rng2.uniform(0.0, 1.0)});
        data.labels.push_back(-1);
    }
    const auto params = SqueezedKernelParams::polar_offset(12.0, 0.7, -0.4);
    const EnsembleStats stats = ensemble_stats(data, params);
    const auto traces = scatter_traces(stats, 5, 9);

    double grand = 0.0;
    for (const auto &p : data.points) {
        for (const auto &q : data.points) {
            grand += kernel_exact(p, q, params);
        }
    }
    grand /= static_cast<double>(data.size() * data.size());
    CHECK(traces.total == doctest::Approx(1.0 - grand).epsilon(1e-10));
    CHECK(traces.between == doctest::Approx(traces.total - traces.within).epsilon(1e-12));
}

TEST_CASE("stats validation rejects impossible values") {
    EnsembleStats bad;
    bad.purity_a = 0.9;
    bad.purity_b = 0.9;
    bad.overlap_ab = 0.99; // above sqrt(0.81) = 0.9
    CHECK_THROWS_AS(bad.validate(), std::runtime_error);

    EnsembleStats zero;
    zero.purity_a = 0.0;
    zero.purity_b = 0.5;
    zero.overlap_ab = 0.1;
    CHECK_THROWS_AS(zero.validate(), std::runtime_error);

    EnsembleStats above;
    above.purity_a = 1.2;
    above.purity_b = 0.5;
    above.overlap_ab = 0.1;
    CHECK_THROWS_AS(above.validate(), std::runtime_error);
}

TEST_CASE("fidelity classifier is symmetric and breaks ties toward class a") {
    LabeledDataset refs;
    refs.points = {{0.5, 0.0}, {-0.5, 0.0}};
    refs.labels = {1, -1};
    const auto params = SqueezedKernelParams::rbf(4.0);
    // Points on the mirror axis tie; the convention is +1.
    CHECK(fidelity_classify({0.0, 0.0}, refs, params) == 1);
    CHECK(fidelity_classify({0.0, 0.7}, refs, params) == 1);
    // Clear cases.
    CHECK(fidelity_classify({0.6, 0.1}, refs, params) == 1);
    CHECK(fidelity_classify({-0.6, 0.1}, refs, params) == -1);

    LabeledDataset one_class;
    one_class.points = {{0.0, 0.0}};
    one_class.labels = {1};
    CHECK_THROWS_AS(fidelity_classify({0.0, 0.0}, one_class, params), std::invalid_argument);
}

TEST_CASE("learning on separated singletons squeezes along the separation axis") {
    // A at (0.2, 0), B at (-0.2, 0). The overlap only decreases as e^{2r}
    // grows along the x axis, so the optimizer should push r to the cap and
    // keep theta near 0.
    LabeledDataset data;
    data.points = {{0.2, 0.0}, {-0.2, 0.0}};
    data.labels = {1, -1};
    LearnOptions opts;
    opts.gamma = 1.0;
    opts.objective = LearnObjective::HilbertSchmidt;
    const auto learned = learn_hyperparams(data, opts);

    CHECK(!learned.landscape_flat);
    CHECK(learned.r >= 1.9);
    CHECK(std::abs(learned.theta) <= 0.05);

    // The reported objective value is the objective at the reported point.
    const auto params = SqueezedKernelParams::polar_offset(1.0, learned.r, learned.theta);
    const double recomputed = hs_distance(ensemble_stats(data, params));
    CHECK(learned.objective_value == doctest::Approx(recomputed).epsilon(1e-10));
}

TEST_CASE("flat landscape is flagged and reported at the first grid cell") {
    // Classes with identical multisets: every (r, theta) gives hs = 0.
    LabeledDataset data;
    data.points = {{0.1, 0.2}, {-0.4, 0.3}, {0.1, 0.2}, {-0.4, 0.3}};
    data.labels = {1, 1, -1, -1};
    LearnOptions opts;
    opts.gamma = 5.0;
    opts.objective = LearnObjective::HilbertSchmidt;
    const auto learned = learn_hyperparams(data, opts);
    CHECK(learned.landscape_flat);
    CHECK(learned.r == 0.0);
    CHECK(learned.theta == doctest::Approx(-kPi / 2).epsilon(1e-15));
    CHECK(learned.objective_value <= 1e-12);

    // The fisher objective is degenerate everywhere on the same data only if
    // purities are 1; here they are not, so it still learns. A two-singleton
    // set is degenerate on every cell and must throw.
    LabeledDataset singletons;
    singletons.points = {{0.3, 0.0}, {-0.3, 0.0}};
    singletons.labels = {1, -1};
    LearnOptions fisher_opts;
    fisher_opts.gamma = 1.0;
    fisher_opts.objective = LearnObjective::Fisher;
    CHECK_THROWS_AS(learn_hyperparams(singletons, fisher_opts), std::runtime_error);
}

TEST_CASE("learning is deterministic and improves on the ring task") {
    const sqk::TaskSpec spec{sqk::Task::Ring, 10, 4, 99};
    const auto generated = sqk::generate(spec);
    LearnOptions opts;
    opts.gamma = 40.0;
    opts.objective = LearnObjective::HilbertSchmidt;

    const auto first = learn_hyperparams(generated.train, opts);
    const auto second = learn_hyperparams(generated.train, opts);
    CHECK(first.r == second.r);
    CHECK(first.theta == second.theta);
    CHECK(first.objective_value == second.objective_value);

    // The learned objective at least matches the unsqueezed kernel's value.
    const double baseline = hs_distance(
        ensemble_stats(generated.train, SqueezedKernelParams::polar_offset(40.0, 0.0, 0.0)));
    CHECK(first.objective_value >= baseline - 1e-12);
    CHECK(first.theta > -kPi / 2 - 1e-15);
    CHECK(first.theta <= kPi / 2 + 1e-15);

    // Fisher objective also runs and recomputes consistently on this data.
    LearnOptions fisher_opts = opts;
    fisher_opts.objective = LearnObjective::Fisher;
    const auto fisher_learned = learn_hyperparams(generated.train, fisher_opts);
    const auto fisher_params =
        SqueezedKernelParams::polar_offset(40.0, fisher_learned.r, fisher_learned.theta);
    CHECK(fisher_learned.objective_value ==
          doctest::Approx(fisher_score(ensemble_stats(generated.train, fisher_params)))
              .epsilon(1e-10));
}

} // TEST_SUITE
