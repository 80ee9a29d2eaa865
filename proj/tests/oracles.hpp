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

// Reference oracles used by the unit and acceptance tests. Everything here
// is computed by an independent route (numerical quadrature, projected
// gradient, finite differences, polygon formulas) and never calls the code
// path it is used to check.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sqk/gaussian.hpp"

namespace oracle {

// ---------------------------------------------------------------------------
// 2D quadrature of the phase-space overlap integral.
// ---------------------------------------------------------------------------

// 16-point Gauss-Legendre nodes and weights on [-1, 1] (positive half; the
// rule is symmetric).
inline constexpr double kGlNodes[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499,
};
inline constexpr double kGlWeights[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541,
};

struct Axis {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Composite 16-point Gauss-Legendre rule over [lo, hi] with panels of width
// at most `panel`.
inline Axis composite_gl(double lo, double hi, double panel) {
    Axis axis;
    const auto n_panels = static_cast<std::size_t>(std::ceil((hi - lo) / panel));
    const double w = (hi - lo) / static_cast<double>(n_panels);
    for (std::size_t p = 0; p < n_panels; ++p) {
        const double mid = lo + (static_cast<double>(p) + 0.5) * w;
        const double half = 0.5 * w;
        for (int k = 0; k < 8; ++k) {
            axis.nodes.push_back(mid - half * kGlNodes[k]);
            axis.weights.push_back(half * kGlWeights[k]);
            axis.nodes.push_back(mid + half * kGlNodes[k]);
            axis.weights.push_back(half * kGlWeights[k]);
        }
    }
    return axis;
}

struct GaussianPdf {
    double mq, mp;              // mean
    double i11, i12, i22;       // inverse covariance
    double norm;                // 1 / (2 pi sqrt(det S))

    static GaussianPdf from_state(const sqk::GaussianPureState &s) {
        const double s11 = s.cov.a, s12 = 0.5 * (s.cov.b + s.cov.c), s22 = s.cov.d;
        const double det = s11 * s22 - s12 * s12;
        if (!(det > 0.0)) {
            throw std::runtime_error("oracle: covariance not positive definite");
        }
        GaussianPdf g;
        g.mq = s.mean.x;
        g.mp = s.mean.y;
        g.i11 = s22 / det;
        g.i12 = -s12 / det;
        g.i22 = s11 / det;
        g.norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(det));
        return g;
    }

    double operator()(double q, double p) const {
        const double dq = q - mq, dp = p - mp;
        const double quad = i11 * dq * dq + 2.0 * i12 * dq * dp + i22 * dp * dp;
        return norm * std::exp(-0.5 * quad);
    }

    double sigma_max() const {
        // Largest standard deviation of the covariance (from the inverse).
        const double det_inv = i11 * i22 - i12 * i12;
        const double s11 = i22 / det_inv, s12 = -i12 / det_inv, s22 = i11 / det_inv;
        const double mid = 0.5 * (s11 + s22);
        const double rad = std::sqrt(std::max(0.0, mid * mid - (s11 * s22 - s12 * s12)));
        return std::sqrt(mid + rad);
    }
    double sigma_min() const {
        const double det_inv = i11 * i22 - i12 * i12;
        const double s11 = i22 / det_inv, s12 = -i12 / det_inv, s22 = i11 / det_inv;
        const double mid = 0.5 * (s11 + s22);
        const double rad = std::sqrt(std::max(0.0, mid * mid - (s11 * s22 - s12 * s12)));
        return std::sqrt(std::max(1e-300, mid - rad));
    }
};

// Overlap of two Gaussian pure states as 2 pi * Int W_a W_b dq dp, by brute
// force composite quadrature over a box covering both Wigner functions.
inline double wigner_overlap_quadrature(const sqk::GaussianPureState &a,
                                        const sqk::GaussianPureState &b) {
    const GaussianPdf wa = GaussianPdf::from_state(a);
    const GaussianPdf wb = GaussianPdf::from_state(b);
    const double sig_max = std::max(wa.sigma_max(), wb.sigma_max());
    const double sig_min = std::min(wa.sigma_min(), wb.sigma_min());
    const double margin = 9.0 * sig_max;
    // Two narrow standard deviations per panel: the 16-point rule resolves a
    // Gaussian at that width to machine precision.
    const double panel = 2.0 * sig_min;

    const Axis qa = composite_gl(std::min(wa.mq, wb.mq) - margin,
                                 std::max(wa.mq, wb.mq) + margin, panel);
    const Axis pa = composite_gl(std::min(wa.mp, wb.mp) - margin,
                                 std::max(wa.mp, wb.mp) + margin, panel);

    double integral = 0.0;
    for (std::size_t i = 0; i < qa.nodes.size(); ++i) {
        const double q = qa.nodes[i];
        double row = 0.0;
        for (std::size_t j = 0; j < pa.nodes.size(); ++j) {
            const double p = pa.nodes[j];
            row += pa.weights[j] * wa(q, p) * wb(q, p);
        }
        integral += qa.weights[i] * row;
    }
    return 2.0 * std::numbers::pi * integral;
}

// ---------------------------------------------------------------------------
// Reference closed-form expressions, written straight from the formulas.
// ---------------------------------------------------------------------------

// Shared-angle kernel: exp(-gamma/2 (e^{2r} X^2 + e^{-2r} P^2)) with X, P the
// components of x - y along and across the angle phi.
inline double shared_angle_kernel_reference(const sqk::Point2 &x, const sqk::Point2 &y,
                                            double gamma, double r, double phi) {
    const double dx1 = x.x1 - y.x1, dx2 = x.x2 - y.x2;
    const double big_x = std::cos(phi) * dx1 + std::sin(phi) * dx2;
    const double big_p = -std::sin(phi) * dx1 + std::cos(phi) * dx2;
    return std::exp(-0.5 * gamma *
                    (std::exp(2.0 * r) * big_x * big_x + std::exp(-2.0 * r) * big_p * big_p));
}

// Metric tensor entries written from the hyperbolic-trigonometric form.
inline void metric_reference(double gamma, double r, double phi, double out[4]) {
    const double c2 = std::cosh(2.0 * r), s2 = std::sinh(2.0 * r);
    out[0] = gamma * (c2 + s2 * std::cos(2.0 * phi));
    out[1] = gamma * s2 * std::sin(2.0 * phi);
    out[2] = out[1];
    out[3] = gamma * (c2 - s2 * std::cos(2.0 * phi));
}

// ---------------------------------------------------------------------------
// Brute-force QP reference for the SVM dual.
// ---------------------------------------------------------------------------

struct QpSolution {
    std::vector<double> alpha;
    double bias = 0.0;
    double objective = 0.0;
};

// Projected gradient ascent on max sum(alpha) - 1/2 alpha^T Q alpha subject
// to 0 <= alpha <= C and y^T alpha = 0, with Q_ij = y_i y_j K_ij. The
// feasible-set projection (box intersected with the hyperplane) is found by
// bisection on the hyperplane multiplier.
inline QpSolution qp_reference_solve(const std::vector<std::vector<double>> &kmat,
                                     const std::vector<int> &y, double c_box,
                                     std::size_t iterations = 400000) {
    const std::size_t n = y.size();
    std::vector<std::vector<double>> q(n, std::vector<double>(n));
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            q[i][j] = static_cast<double>(y[i] * y[j]) * kmat[i][j];
        }
        trace += kmat[i][i];
    }
    const double step = 1.0 / (trace + 1.0);

    std::vector<double> alpha(n, 0.0), v(n, 0.0);
    const auto project = [&](std::vector<double> &vec) {
        double vmax = 0.0;
        for (double val : vec) {
            vmax = std::max(vmax, std::abs(val));
        }
        double lo = -(vmax + c_box + 1.0), hi = vmax + c_box + 1.0;
        for (int it = 0; it < 96; ++it) {
            const double lambda = 0.5 * (lo + hi);
            double balance = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double ai = std::clamp(vec[i] - lambda * y[i], 0.0, c_box);
                balance += y[i] * ai;
            }
            // balance is nonincreasing in lambda
            if (balance > 0.0) {
                lo = lambda;
            } else {
                hi = lambda;
            }
        }
        const double lambda = 0.5 * (lo + hi);
        for (std::size_t i = 0; i < n; ++i) {
            vec[i] = std::clamp(vec[i] - lambda * y[i], 0.0, c_box);
        }
    };

    for (std::size_t it = 0; it < iterations; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double qa = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                qa += q[i][j] * alpha[j];
            }
            v[i] = alpha[i] + step * (1.0 - qa);
        }
        project(v);
        std::swap(alpha, v);
    }

    QpSolution sol;
    sol.alpha = alpha;

    std::vector<double> margins(n, 0.0); // sum_j alpha_j y_j K_ij
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            margins[i] += alpha[j] * y[j] * kmat[i][j];
        }
    }
    double sum_alpha = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum_alpha += alpha[i];
        quad += alpha[i] * y[i] * margins[i];
    }
    sol.objective = sum_alpha - 0.5 * quad;

    // Bias from clearly-free support vectors, else midpoint of the feasible
    // interval of the bound-activity constraints.
    double acc = 0.0;
    std::size_t free_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (alpha[i] > 1e-6 * c_box && alpha[i] < c_box * (1.0 - 1e-6)) {
            acc += y[i] - margins[i];
            ++free_count;
        }
    }
    if (free_count > 0) {
        sol.bias = acc / static_cast<double>(free_count);
    } else {
        double lo = -1e300, hi = 1e300;
        for (std::size_t i = 0; i < n; ++i) {
            const double bound = y[i] - margins[i];
            const bool at_zero = alpha[i] <= 1e-6 * c_box;
            if ((at_zero && y[i] > 0) || (!at_zero && y[i] < 0)) {
                lo = std::max(lo, bound); // y_i f >= 1 for alpha = 0, <= 1 at the box
            } else {
                hi = std::min(hi, bound);
            }
        }
        if (lo > hi) {
            std::swap(lo, hi);
        }
        sol.bias = 0.5 * (lo + hi);
    }
    return sol;
}

// ---------------------------------------------------------------------------
// Small numeric helpers.
// ---------------------------------------------------------------------------

// Central-difference gradient of a scalar field.
inline sqk::Vec2 fd_gradient(const std::function<double(const sqk::Point2 &)> &f,
                             const sqk::Point2 &x, double h) {
    return {(f({x.x1 + h, x.x2}) - f({x.x1 - h, x.x2})) / (2.0 * h),
            (f({x.x1, x.x2 + h}) - f({x.x1, x.x2 - h})) / (2.0 * h)};
}

// Mixed-argument second derivative d/dx_i d/dy_j f(x, y) at y = x, the
// finite-difference route to a kernel metric.
inline void fd_kernel_metric(const std::function<double(const sqk::Point2 &, const sqk::Point2 &)> &k,
                             const sqk::Point2 &x, double h, double out[4]) {
    const sqk::Point2 e1p{x.x1 + h, x.x2}, e1m{x.x1 - h, x.x2};
    const sqk::Point2 e2p{x.x1, x.x2 + h}, e2m{x.x1, x.x2 - h};
    const sqk::Point2 shifts_p[2] = {e1p, e2p};
    const sqk::Point2 shifts_m[2] = {e1m, e2m};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out[i * 2 + j] = (k(shifts_p[i], shifts_p[j]) - k(shifts_p[i], shifts_m[j]) -
                              k(shifts_m[i], shifts_p[j]) + k(shifts_m[i], shifts_m[j])) /
                             (4.0 * h * h);
        }
    }
}

// Signed polygon area by the shoelace formula.
inline double shoelace_area(const std::vector<sqk::Point2> &poly) {
    double twice = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto &p = poly[i];
        const auto &q = poly[(i + 1) % poly.size()];
        twice += p.x1 * q.x2 - q.x1 * p.x2;
    }
    return 0.5 * std::abs(twice);
}

inline double mean_of(const std::vector<double> &v) {
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return s / static_cast<double>(v.size());
}

inline double sample_std_of(const std::vector<double> &v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) {
        s += (x - m) * (x - m);
    }
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

} // namespace oracle
