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

#include "sqk/qct.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

namespace sqk {

namespace {

Vec2 field_gradient(const ScalarField &f, const Point2 &x, double step) {
    const double gx = (f({x.x1 + step, x.x2}) - f({x.x1 - step, x.x2})) / (2.0 * step);
    const double gy = (f({x.x1, x.x2 + step}) - f({x.x1, x.x2 - step})) / (2.0 * step);
    return {gx, gy};
}

// Walk from x0 along dir until f changes sign, then bisect the bracket.
// Returns the crossing if one exists within max_t and resolves |f| < 1e-6.
std::optional<Point2> march_and_bisect(const ScalarField &f, const Point2 &x0, const Vec2 &dir,
                                       double f0, double step, double max_t) {
    const auto at = [&](double t) { return Point2{x0.x1 + t * dir.x, x0.x2 + t * dir.y}; };
    double t_lo = 0.0;
    double f_lo = f0;
    for (double t = step; t <= max_t + 0.5 * step; t += step) {
        const double ft = f(at(t));
        if (ft == 0.0) {
            return at(t);
        }
        if ((f_lo < 0.0) != (ft < 0.0)) {
            double t_hi = t;
            for (int iter = 0; iter < 60; ++iter) {
                const double mid = 0.5 * (t_lo + t_hi);
                const double fm = f(at(mid));
                if (fm == 0.0) {
                    return at(mid);
                }
                if ((f_lo < 0.0) != (fm < 0.0)) {
                    t_hi = mid;
                } else {
                    t_lo = mid;
                    f_lo = fm;
                }
            }
            const Point2 root = at(0.5 * (t_lo + t_hi));
            if (std::abs(f(root)) < 1e-6) {
                return root;
            }
            return std::nullopt;
        }
        t_lo = t;
        f_lo = ft;
    }
    return std::nullopt;
}

} // namespace

Point2 nearest_boundary_point(const ScalarField &f, const Point2 &x0) {
    const double f0 = f(x0);
    if (!std::isfinite(f0)) {
        throw std::runtime_error("nearest_boundary_point: field is not finite at the start point");
    }
    if (std::abs(f0) < 1e-9) {
        return x0;
    }

    constexpr double kStep = 0.02;
    constexpr double kRadius = 1.0;
    std::vector<Point2> candidates;

    const Vec2 grad = field_gradient(f, x0, 1e-4);
    const double gnorm = grad.norm();
    if (gnorm > 1e-12) {
        const Vec2 downhill = (f0 > 0.0 ? -grad : grad) * (1.0 / gnorm);
        for (const Vec2 &dir : {downhill, -downhill}) {
            if (auto hit = march_and_bisect(f, x0, dir, f0, kStep, kRadius)) {
                candidates.push_back(*hit);
            }
        }
    }

    if (candidates.empty()) {
        // Radial fan fallback: scan evenly spaced directions.
        constexpr int kDirections = 64;
        for (int k = 0; k < kDirections; ++k) {
            const double angle = 2.0 * std::numbers::pi * k / kDirections;
            const Vec2 dir{std::cos(angle), std::sin(angle)};
            if (auto hit = march_and_bisect(f, x0, dir, f0, kStep, kRadius)) {
                candidates.push_back(*hit);
            }
        }
    }

    if (candidates.empty()) {
        throw std::runtime_error(
            "nearest_boundary_point: no zero crossing within unit radius of the start point");
    }

    const Point2 *best = &candidates.front();
    double best_dist = (candidates.front() - x0).norm();
    for (const Point2 &c : candidates) {
        const double dist = (c - x0).norm();
        if (dist < best_dist) {
            best_dist = dist;
            best = &c;
        }
    }
    return *best;
}

Point2 nearest_boundary_point(const SvmModel &model, const Point2 &x0) {
    return nearest_boundary_point(
        [&model](const Point2 &p) { return decision_value(model, p); }, x0);
}

double boundary_alignment_angle(const ScalarField &f, const Point2 &boundary_point) {
    const Vec2 grad = field_gradient(f, boundary_point, 1e-4);
    if (grad.norm() < 1e-10) {
        throw std::runtime_error("boundary_alignment_angle: field gradient vanishes");
    }
    return std::atan2(grad.y, grad.x);
}

double boundary_alignment_angle(const SvmModel &model, const Point2 &boundary_point) {
    return boundary_alignment_angle(
        [&model](const Point2 &p) { return decision_value(model, p); }, boundary_point);
}

double polar_offset_angle(const Point2 &x) {
    if (x.x1 == 0.0 && x.x2 == 0.0) {
        return 0.5 * std::numbers::pi; // atan2(0, 0) taken as 0
    }
    return std::atan2(x.x2, x.x1) + 0.5 * std::numbers::pi;
}

void QctConfig::validate() const {
    if (!(std::isfinite(h0) && h0 >= 0.0)) {
        throw std::invalid_argument("QctConfig: h0 must be finite and >= 0");
    }
    if (!(std::isfinite(gamma_ratio) && gamma_ratio > 0.0)) {
        throw std::invalid_argument("QctConfig: gamma_ratio must be finite and > 0");
    }
    if (!(std::isfinite(r) && r >= 0.0)) {
        throw std::invalid_argument("QctConfig: r must be finite and >= 0");
    }
}

QFactorSpec build_qct_qfactor(const SvmModel &stage1, const QctConfig &cfg) {
    cfg.validate();
    if (stage1.svs.empty()) {
        throw std::runtime_error("build_qct_qfactor: stage-1 model has no support vectors");
    }
    QFactorSpec spec;
    spec.h0 = cfg.h0;
    spec.gamma_prime = cfg.gamma_ratio * stage1.kernel.base.gamma;
    spec.centers.reserve(stage1.svs.size());
    for (const SupportVector &sv : stage1.svs) {
        SqueezeCenter center;
        center.center = sv.point;
        center.weight = 1.0;
        switch (cfg.angle_rule) {
        case QctAngleRule::None:
            center.r = 0.0;
            center.phi = 0.0;
            break;
        case QctAngleRule::PolarOffset:
            center.r = cfg.r;
            center.phi = polar_offset_angle(sv.point);
            break;
        case QctAngleRule::BoundaryAligned:
            center.r = cfg.r;
            try {
                const Point2 on_boundary = nearest_boundary_point(stage1, sv.point);
                center.phi = boundary_alignment_angle(stage1, on_boundary);
            } catch (const std::runtime_error &) {
                // No reachable boundary near this center; fall back to the
                // polar rule for it alone.
                center.phi = polar_offset_angle(sv.point);
            }
            break;
        }
        spec.centers.push_back(center);
    }
    spec.validate();
    return spec;
}

QctResult qct_pipeline(const LabeledDataset &data, const SqueezedKernelParams &base,
                       const QctConfig &cfg) {
    cfg.validate();
    base.validate();
    QctResult result;
    result.stage1 = train(data, KernelSpec{base, std::nullopt}, cfg.train);
    result.qfactor = build_qct_qfactor(result.stage1, cfg);
    result.stage2 = train(data, KernelSpec{base, result.qfactor}, cfg.train);
    return result;
}

} // namespace sqk
