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
 * @file qct.hpp
 * @brief Two-stage quasi-conformal kernel refinement.
 *
 * Stage 1 trains an SVM with the base kernel. Its support vectors become the
 * centers of a scaling factor q(x), with squeezing angles chosen by a
 * per-center rule, and stage 2 retrains with the modified kernel
 * q(x) q(y) k(x, y). The factor magnifies resolution near the preliminary
 * decision boundary, where the support vectors concentrate.
 */

#pragma once

#include <functional>

#include "sqk/svm.hpp"

namespace sqk {

/// Decision-style scalar field on the data plane.
using ScalarField = std::function<double(const Point2 &)>;

/**
 * @brief Closest point of the zero set of f, starting from x0.
 *
 * Marches along both signed directions of the local gradient (central
 * differences, step 1e-4) to bracket a sign change within radius 1.0, then
 * bisects to 1e-8. When neither ray brackets (for example at a vanishing
 * gradient), falls back to a 64-direction radial scan of the same radius.
 * Returns the nearest candidate found, which satisfies |f| < 1e-6; throws
 * std::runtime_error when no candidate exists within the radius.
 */
Point2 nearest_boundary_point(const ScalarField &f, const Point2 &x0);
Point2 nearest_boundary_point(const SvmModel &model, const Point2 &x0);

/**
 * @brief Angle of the gradient of f at a boundary point, atan2(df/dx2, df/dx1)
 *        by central differences with step 1e-4.
 *
 * Squeezing a center by this angle puts the slow kernel direction along the
 * local boundary tangent. Throws std::runtime_error when the gradient norm
 * is below 1e-10 (direction undefined).
 */
double boundary_alignment_angle(const ScalarField &f, const Point2 &boundary_point);
double boundary_alignment_angle(const SvmModel &model, const Point2 &boundary_point);

/// atan2(x2, x1) + pi/2, with atan2(0, 0) taken as 0 (origin gives pi/2).
double polar_offset_angle(const Point2 &x);

/// How squeezing angles of the stage-2 factor centers are chosen.
enum class QctAngleRule {
    BoundaryAligned, ///< gradient angle at the nearest stage-1 boundary point
    PolarOffset,     ///< polar angle of the center + pi/2
    None,            ///< no squeezing: isotropic bumps (r = 0)
};

/** @brief Configuration of the two-stage refinement. */
struct QctConfig {
    double h0 = 0.0;          ///< constant offset of the factor
    double gamma_ratio = 4.0; ///< bump scale: gamma_prime = gamma_ratio * base gamma
    double r = 0.5;           ///< squeezing magnitude of each bump (ignored by None)
    QctAngleRule angle_rule = QctAngleRule::BoundaryAligned;
    SvmTrainOptions train;    ///< solver options shared by both stages

    /// @throws std::invalid_argument if h0 < 0, gamma_ratio <= 0, or r < 0.
    void validate() const;
};

/** @brief Both trained stages plus the factor connecting them. */
struct QctResult {
    SvmModel stage1;
    QFactorSpec qfactor;
    SvmModel stage2;
};

/**
 * @brief Build the scaling factor from a trained stage-1 model: one unit
 *        weight bump per support vector, angles per cfg.angle_rule.
 *
 * A BoundaryAligned center whose boundary search or gradient fails falls
 * back to the PolarOffset rule for that center.
 */
QFactorSpec build_qct_qfactor(const SvmModel &stage1, const QctConfig &cfg);

/// Run both stages on `data` with base kernel `base`.
QctResult qct_pipeline(const LabeledDataset &data, const SqueezedKernelParams &base,
                       const QctConfig &cfg);

} // namespace sqk
