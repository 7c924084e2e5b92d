// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#include "covspec/quadrature.hpp"

#include "covspec/errors.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace covspec {

namespace {

// Kronrod abscissae on [0, 1]; odd indices are the embedded Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[i] * pair;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate_gk15(const std::function<double(double)>& f, double a, double b,
                                double abs_tol, int max_intervals) {
    if (!(b > a)) throw ValidationError("integration interval must satisfy a < b");
    if (!(abs_tol > 0.0)) throw ValidationError("absolute tolerance must be positive");

    std::priority_queue<Segment> heap;
    Segment first = gk15(f, a, b);
    double total = first.value;
    double total_err = first.error;
    heap.push(first);

    while (total_err > abs_tol) {
        if (static_cast<int>(heap.size()) >= max_intervals) {
            std::ostringstream msg;
            msg << "adaptive quadrature did not reach tolerance " << abs_tol << " (error estimate "
                << total_err << " after " << heap.size() << " intervals)";
            throw NumericalError(msg.str());
        }
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = gk15(f, worst.a, mid);
        const Segment right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to shed the drift accumulated by the running updates.
    double value = 0.0;
    double err = 0.0;
    const int intervals = static_cast<int>(heap.size());
    while (!heap.empty()) {
        value += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    if (!std::isfinite(value)) throw NumericalError("quadrature produced a non-finite value");
    return {value, err, intervals};
}

}  // namespace covspec
