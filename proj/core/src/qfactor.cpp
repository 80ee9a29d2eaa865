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

#include "sqk/qfactor.hpp"

#include <cmath>
#include <stdexcept>

namespace sqk {

void QFactorSpec::validate() const {
    if (!(std::isfinite(h0) && h0 >= 0.0)) {
        throw std::invalid_argument("QFactorSpec: h0 must be finite and >= 0");
    }
    if (!(std::isfinite(gamma_prime) && gamma_prime > 0.0)) {
        throw std::invalid_argument("QFactorSpec: gamma_prime must be finite and > 0");
    }
    if (centers.empty()) {
        throw std::invalid_argument("QFactorSpec: center list must not be empty");
    }
    double total_weight = h0;
    for (const SqueezeCenter &c : centers) {
        if (!(std::isfinite(c.center.x1) && std::isfinite(c.center.x2))) {
            throw std::invalid_argument("QFactorSpec: center coordinates must be finite");
        }
        if (!(std::isfinite(c.weight) && c.weight >= 0.0)) {
            throw std::invalid_argument("QFactorSpec: center weights must be finite and >= 0");
        }
        if (!(std::isfinite(c.r) && c.r >= 0.0)) {
            throw std::invalid_argument("QFactorSpec: center squeeze strengths must be finite and >= 0");
        }
        if (!std::isfinite(c.phi)) {
            throw std::invalid_argument("QFactorSpec: center angles must be finite");
        }
        total_weight += c.weight;
    }
    if (!(total_weight > 0.0)) {
        throw std::invalid_argument("QFactorSpec: h0 and all weights are zero; q would vanish identically");
    }
}

namespace {

SqueezedKernelParams center_kernel(const QFactorSpec &spec, const SqueezeCenter &c) {
    return SqueezedKernelParams::fixed(spec.gamma_prime, c.r, c.phi);
}

} // namespace

double q_factor(const Point2 &x, const QFactorSpec &spec) {
    spec.validate();
    double q = spec.h0;
    for (const SqueezeCenter &c : spec.centers) {
        q += c.weight * kernel_exact(c.center, x, center_kernel(spec, c));
    }
    return q;
}

Vec2 q_factor_gradient(const Point2 &x, const QFactorSpec &spec) {
    spec.validate();
    Vec2 grad{0.0, 0.0};
    for (const SqueezeCenter &c : spec.centers) {
        const SqueezedKernelParams params = center_kernel(spec, c);
        const double k = kernel_exact(c.center, x, params);
        // Each bump is exp(-0.5 d^T A d) with A the center's anisotropic scale
        // matrix, so its gradient in x is -k * A * d.
        const Mat2 a = metric_tensor(params).g;
        const Vec2 d = x - c.center;
        grad = grad + (a * d) * (-c.weight * k);
    }
    return grad;
}

double modified_kernel(const Point2 &x, const Point2 &y, const SqueezedKernelParams &base,
                       const QFactorSpec &spec) {
    return q_factor(x, spec) * q_factor(y, spec) * kernel_exact(x, y, base);
}

MetricTensor2 modified_metric(const Point2 &x, const SqueezedKernelParams &base,
                              const QFactorSpec &spec) {
    // Product rule on q(x)q(y)k(x,y): grad q outer-product plus q^2 times the
    // base tensor.
    const MetricTensor2 base_metric = metric_tensor(base);
    const double q = q_factor(x, spec);
    const Vec2 dq = q_factor_gradient(x, spec);
    const Mat2 outer{dq.x * dq.x, dq.x * dq.y, dq.y * dq.x, dq.y * dq.y};
    return {outer + base_metric.g * (q * q)};
}

double KernelSpec::eval(const Point2 &x, const Point2 &y) const {
    if (qfactor.has_value()) {
        return modified_kernel(x, y, base, *qfactor);
    }
    return kernel_exact(x, y, base);
}

double KernelSpec::self(const Point2 &x) const {
    if (qfactor.has_value()) {
        const double q = q_factor(x, *qfactor);
        return q * q;
    }
    base.validate();
    return 1.0;
}

void KernelSpec::validate() const {
    base.validate();
    if (qfactor.has_value()) {
        qfactor->validate();
    }
}

GramMatrix gram_matrix(std::span<const Point2> points, const KernelSpec &kernel) {
    kernel.validate();
    const std::size_t n = points.size();
    GramMatrix gram(n);
    for (std::size_t i = 0; i < n; ++i) {
        gram.at(i, i) = kernel.self(points[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double k = kernel.eval(points[i], points[j]);
            gram.at(i, j) = k;
            gram.at(j, i) = k;
        }
    }
    return gram;
}

} // namespace sqk
