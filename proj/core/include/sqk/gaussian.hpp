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
 * @file gaussian.hpp
 * @brief Displaced squeezed vacuum encodings, exact kernel evaluation, and
 *        the induced data-plane metric.
 *
 * A 2D sample x is encoded as a single-mode Gaussian pure state whose mean is
 * the scaled sample sqrt(gamma) * x and whose covariance is a rotated
 * squeezed vacuum (vacuum variance 1/2). The kernel value of two samples is
 * the Hilbert-Schmidt inner product of their states, which for Gaussian pure
 * states has a closed form in the means and covariances. At squeezing r = 0
 * the kernel reduces to the Gaussian RBF kernel exp(-gamma/2 * |x - y|^2).
 */

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sqk/geometry.hpp"

namespace sqk {

/// How the squeezing angle of the encoding depends on the sample.
enum class AnglePolicy {
    Fixed,       ///< one angle phi shared by every sample
    PolarOffset, ///< per-sample angle atan2(x2, x1) + theta
};

/**
 * @brief Parameters of the squeezed-state kernel.
 *
 * `gamma` scales the data plane (RBF width at r = 0), `r >= 0` is the
 * squeezing magnitude, and `angle` is either the shared squeezing angle phi
 * (Fixed) or the offset theta added to each sample's polar angle
 * (PolarOffset). The squeezing angle is the direction of fastest kernel
 * decay; the level sets of the kernel around a sample are ellipses whose
 * minor axis points along it.
 */
struct SqueezedKernelParams {
    double gamma = 1.0;
    double r = 0.0;
    AnglePolicy policy = AnglePolicy::Fixed;
    double angle = 0.0;

    static constexpr SqueezedKernelParams rbf(double gamma) {
        return {gamma, 0.0, AnglePolicy::Fixed, 0.0};
    }
    static constexpr SqueezedKernelParams fixed(double gamma, double r, double phi) {
        return {gamma, r, AnglePolicy::Fixed, phi};
    }
    static constexpr SqueezedKernelParams polar_offset(double gamma, double r, double theta) {
        return {gamma, r, AnglePolicy::PolarOffset, theta};
    }

    /// Squeezing angle used for sample x. atan2(0, 0) is taken as 0.
    double squeeze_angle(const Point2 &x) const;

    /// Throws std::invalid_argument unless gamma > 0, r >= 0, all finite.
    void validate() const;
};

/** @brief Gaussian pure state in one mode: phase-space mean and covariance. */
struct GaussianPureState {
    Vec2 mean;  ///< (q, p) displacement
    Mat2 cov;   ///< symmetric covariance, det = 1/4 for a pure state
};

/**
 * @brief Encode a data sample as a displaced squeezed vacuum state.
 *
 * Mean: sqrt(gamma) * (x1, x2). Covariance: R(phi) diag(e^{-2r}, e^{2r})
 * R(phi)^T / 2 with phi given by the angle policy, so the q quadrature
 * rotated by phi carries the reduced variance e^{-2r}/2.
 */
GaussianPureState encode_state(const Point2 &x, const SqueezedKernelParams &params);

/**
 * @brief Hilbert-Schmidt inner product of two Gaussian pure states.
 *
 * Closed form det(Sa + Sb)^{-1/2} exp(-1/2 d^T (Sa + Sb)^{-1} d) with
 * d = mean_a - mean_b. Throws std::runtime_error when Sa + Sb is
 * numerically singular.
 */
double gaussian_overlap(const GaussianPureState &a, const GaussianPureState &b);

/**
 * @brief Exact kernel value of two samples, k in (0, 1].
 *
 * Equals gaussian_overlap of the two encoded states; k(x, x) is exactly 1.
 * For a shared angle (Fixed policy, or equal polar angles) this reduces to
 * exp(-gamma/2 (e^{2r} X^2 + e^{-2r} P^2)) where X and P are the components
 * of x - y along and across the squeezing direction.
 */
double kernel_exact(const Point2 &x, const Point2 &y, const SqueezedKernelParams &params);

/** @brief Riemannian metric induced on the data plane by the encoding. */
struct MetricTensor2 {
    Mat2 g;
};

/**
 * @brief Metric tensor of a Fixed-angle kernel,
 *        g = gamma R(phi) diag(e^{2r}, e^{-2r}) R(phi)^T.
 *
 * Requires the Fixed policy (with PolarOffset the angle varies with the
 * sample and no single tensor applies); throws std::invalid_argument
 * otherwise.
 */
MetricTensor2 metric_tensor(const SqueezedKernelParams &params);

/// Area magnification sqrt(det g); equals gamma for every squeezing angle.
double magnification_factor(const MetricTensor2 &metric);

/**
 * @brief Principal axes of the kernel level-set ellipses.
 *
 * `major` is the direction of slowest kernel decay (smallest metric
 * eigenvalue; parallel to (-tan phi, 1)), `minor` the fastest (largest
 * eigenvalue). Signs are fixed by requiring a nonnegative second component,
 * ties broken by a nonnegative first component. When the two eigenvalues
 * coincide (r = 0) the directions are undefined and `isotropic` is set.
 */
struct PrincipalAxes {
    bool isotropic = false;
    Vec2 major;          ///< unit eigenvector, smallest eigenvalue
    Vec2 minor;          ///< unit eigenvector, largest eigenvalue
    double metric_major = 0.0; ///< eigenvalue along `major` (gamma e^{-2r})
    double metric_minor = 0.0; ///< eigenvalue along `minor` (gamma e^{2r})
};

PrincipalAxes principal_directions(const MetricTensor2 &metric);

/** @brief Dense symmetric kernel matrix. */
class GramMatrix {
  public:
    GramMatrix() = default;
    explicit GramMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double &at(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double at(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    const std::vector<double> &data() const { return data_; }

  private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Gram matrix of the exact kernel; unit diagonal, symmetric entries.
GramMatrix gram_matrix(std::span<const Point2> points, const SqueezedKernelParams &params);

} // namespace sqk
