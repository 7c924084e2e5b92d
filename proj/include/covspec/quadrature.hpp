// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace covspec {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int intervals = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
/// Bisects the interval with the largest error estimate until the summed
/// estimate drops below abs_tol. Throws NumericalError when max_intervals is
/// exhausted first.
QuadratureResult integrate_gk15(const std::function<double(double)>& f, double a, double b,
                                double abs_tol, int max_intervals = 2000);

}  // namespace covspec
