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
 * @file qfactor.hpp
 * @brief Quasi-conformal scaling factor q(x) and the kernel it modifies.
 *
 * The factor is a positive combination of squeezed kernel bumps anchored at
 * chosen centers, q(x) = h0 + sum_j h_j k_j(c_j, x). Multiplying a base
 * kernel by q(x) q(y) rescales the feature map lengths pointwise, which
 * magnifies the data-plane metric around the centers while keeping the
 * kernel positive semidefinite.
 */

#pragma once

#include <optional>
#include <span>

#include "sqk/gaussian.hpp"

namespace sqk {

/** @brief One term of the scaling factor: a squeezed bump at a center. */
struct SqueezeCenter {
    Point2 center;
    double weight = 1.0; ///< h_j >= 0
    double r = 0.0;      ///< squeezing magnitude of the bump
    double phi = 0.0;    ///< squeezing angle of the bump (fixed per center)
};

/** @brief Parameters of the scaling factor q(x). */
struct QFactorSpec {
    double h0 = 0.0;          ///< constant offset, >= 0
    double gamma_prime = 1.0; ///< data-plane scale of the bumps
    std::vector<SqueezeCenter> centers;

    /// Throws std::invalid_argument on negative weights/offset, bad scale,
    /// or an empty center list.
    void validate() const;
};

/// q(x) = h0 + sum_j h_j k(c_j, x) with per-center fixed-angle kernels.
double q_factor(const Point2 &x, const QFactorSpec &spec);

/// Analytic gradient of q with respect to x.
Vec2 q_factor_gradient(const Point2 &x, const QFactorSpec &spec);

/// Modified kernel q(x) q(y) k_base(x, y).
double modified_kernel(const Point2 &x, const Point2 &y, const SqueezedKernelParams &base,
                       const QFactorSpec &spec);

/**
 * @brief Metric of the modified kernel at x:
 *        g~ = grad q grad q^T + q(x)^2 g_base.
 *
 * Requires a Fixed-angle base (same restriction as metric_tensor).
 */
MetricTensor2 modified_metric(const Point2 &x, const SqueezedKernelParams &base,
                              const QFactorSpec &spec);

/**
 * @brief A base kernel together with an optional quasi-conformal factor.
 *
 * This is the kernel interface the SVM trains against: eval(x, y) is the
 * base kernel value, times q(x) q(y) when a factor is attached.
 */
struct KernelSpec {
    SqueezedKernelParams base;
    std::optional<QFactorSpec> qfactor;

    double eval(const Point2 &x, const Point2 &y) const;
    /// k(x, x): exactly 1 without a factor, q(x)^2 with one.
    double self(const Point2 &x) const;

    void validate() const;
};

/// Gram matrix of a composed kernel spec.
GramMatrix gram_matrix(std::span<const Point2> points, const KernelSpec &kernel);

} // namespace sqk
