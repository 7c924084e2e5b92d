// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "covspec/rng.hpp"
#include "covspec/spectral.hpp"

namespace covspec {

/// Law of a mean-zero, unit-variance scalar innovation.
struct StandardizedLaw {
    enum class Kind { Normal, Gamma };
    Kind kind = Kind::Normal;
    double gamma_shape = 4.0;  // used when kind == Gamma

    static StandardizedLaw normal() { return {Kind::Normal, 0.0}; }
    static StandardizedLaw gamma(double shape) { return {Kind::Gamma, shape}; }

    /// Law whose excess kurtosis equals beta: normal for 0, Gamma(6/beta) for beta > 0.
    static StandardizedLaw with_excess_kurtosis(double beta);

    /// E[xi^4] - 3.
    double excess_kurtosis() const;
};

/// rows x cols matrix of iid draws from `law`, filled row by row.
Matrix draw_standardized(Eigen::Index rows, Eigen::Index cols, const StandardizedLaw& law, Engine& engine);

}  // namespace covspec
