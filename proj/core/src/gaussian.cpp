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

#include "sqk/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sqk {

double SqueezedKernelParams::squeeze_angle(const Point2 &x) const {
    if (policy == AnglePolicy::Fixed) {
        return angle;
    }
    if (x.x1 == 0.0 && x.x2 == 0.0) {
        return angle; // atan2(0, 0) taken as 0
    }
    return std::atan2(x.x2, x.x1) + angle;
}

void SqueezedKernelParams::validate() const {
    if (!(std::isfinite(gamma) && gamma > 0.0)) {
        throw std::invalid_argument("SqueezedKernelParams: gamma must be finite and > 0");
    }
    if (!(std::isfinite(r) && r >= 0.0)) {
        throw std::invalid_argument("SqueezedKernelParams: r must be finite and >= 0");
    }
    if (!std::isfinite(angle)) {
        throw std::invalid_argument("SqueezedKernelParams: angle must be finite");
    }
}

GaussianPureState encode_state(const Point2 &x, const SqueezedKernelParams &params) {
    params.validate();
    const double root_gamma = std::sqrt(params.gamma);
    const double phi = params.squeeze_angle(x);
    const Mat2 rot = rotation(phi);
    const Mat2 squeezed =
        Mat2::diagonal(0.5 * std::exp(-2.0 * params.r), 0.5 * std::exp(2.0 * params.r));
    return {Vec2{root_gamma * x.x1, root_gamma * x.x2}, rot * squeezed * rot.transposed()};
}

double gaussian_overlap(const GaussianPureState &a, const GaussianPureState &b) {
    const Mat2 sum = a.cov + b.cov;
    const double det = sum.det();
    if (!(det > 1e-300)) {
        throw std::runtime_error("gaussian_overlap: covariance sum is numerically singular");
    }
    const double inv = 1.0 / det;
    const Mat2 precision{sum.d * inv, -sum.b * inv, -sum.c * inv, sum.a * inv};
    const Vec2 delta = a.mean - b.mean;
    const double value = std::exp(-0.5 * precision.quadratic(delta)) / std::sqrt(det);
    // det(Sa + Sb) >= 1 for pure states; clamp the roundoff excess.
    return std::min(value, 1.0);
}

double kernel_exact(const Point2 &x, const Point2 &y, const SqueezedKernelParams &params) {
    if (x == y) {
        params.validate();
        return 1.0;
    }
    return gaussian_overlap(encode_state(x, params), encode_state(y, params));
}

MetricTensor2 metric_tensor(const SqueezedKernelParams &params) {
    params.validate();
    if (params.policy != AnglePolicy::Fixed) {
        throw std::invalid_argument(
            "metric_tensor: defined for the Fixed angle policy only (the polar-offset "
            "kernel has no single data-plane tensor)");
    }
    const Mat2 rot = rotation(params.angle);
    const Mat2 core = Mat2::diagonal(params.gamma * std::exp(2.0 * params.r),
                                     params.gamma * std::exp(-2.0 * params.r));
    return {rot * core * rot.transposed()};
}

double magnification_factor(const MetricTensor2 &metric) {
    return std::sqrt(std::max(metric.g.det(), 0.0));
}

namespace {

// Sign convention of eigenvectors: nonnegative second component, ties
// resolved toward a nonnegative first component. A unit-vector component
// within kSignTieTol of zero counts as a tie, so axis-aligned directions
// stay canonical when trig round-off perturbs an exact zero.
Vec2 canonical_sign(const Vec2 &v) {
    constexpr double kSignTieTol = 1e-12;
    const bool tie = std::abs(v.y) <= kSignTieTol;
    if ((!tie && v.y < 0.0) || (tie && v.x < 0.0)) {
        return -v;
    }
    return v;
}

} // namespace

PrincipalAxes principal_directions(const MetricTensor2 &metric) {
    const double a = metric.g.a;
    const double d = metric.g.d;
    const double off = 0.5 * (metric.g.b + metric.g.c);
    const double mid = 0.5 * (a + d);
    const double half_gap = 0.5 * (a - d);
    const double radius = std::hypot(half_gap, off);

    PrincipalAxes axes;
    if (radius <= 1e-12 * std::abs(mid)) {
        axes.isotropic = true;
        axes.major = {1.0, 0.0};
        axes.minor = {0.0, 1.0};
        axes.metric_major = mid;
        axes.metric_minor = mid;
        return axes;
    }

    axes.metric_major = mid - radius; // slow decay: smallest eigenvalue
    axes.metric_minor = mid + radius;

    // Eigenvector of the smallest eigenvalue; take the better conditioned of
    // the two analytic forms.
    const Vec2 cand1{off, axes.metric_major - a};
    const Vec2 cand2{axes.metric_major - d, off};
    const Vec2 raw = cand1.dot(cand1) >= cand2.dot(cand2) ? cand1 : cand2;
    axes.major = canonical_sign(raw.normalized());
    axes.minor = canonical_sign(Vec2{-axes.major.y, axes.major.x});
    return axes;
}

GramMatrix gram_matrix(std::span<const Point2> points, const SqueezedKernelParams &params) {
    params.validate();
    const std::size_t n = points.size();
    GramMatrix gram(n);
    for (std::size_t i = 0; i < n; ++i) {
        gram.at(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double k = kernel_exact(points[i], points[j], params);
            gram.at(i, j) = k;
            gram.at(j, i) = k;
        }
    }
    return gram;
}

} // namespace sqk
