// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#include "covspec/sampling.hpp"

#include "covspec/errors.hpp"

#include <cmath>
#include <random>

namespace covspec {

StandardizedLaw StandardizedLaw::with_excess_kurtosis(double beta) {
    if (beta == 0.0) return normal();
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw ValidationError("no built-in standardized law with excess kurtosis " + std::to_string(beta));
    }
    return gamma(6.0 / beta);
}

double StandardizedLaw::excess_kurtosis() const {
    return kind == Kind::Normal ? 0.0 : 6.0 / gamma_shape;
}

Matrix draw_standardized(Eigen::Index rows, Eigen::Index cols, const StandardizedLaw& law, Engine& engine) {
    Matrix out(rows, cols);
    if (law.kind == StandardizedLaw::Kind::Normal) {
        std::normal_distribution<double> dist(0.0, 1.0);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = dist(engine);
    } else {
        if (!(law.gamma_shape > 0.0)) throw ValidationError("gamma shape must be positive");
        // Gamma(k, 1/sqrt(k)) has mean sqrt(k) and unit variance.
        const double scale = 1.0 / std::sqrt(law.gamma_shape);
        const double mean = std::sqrt(law.gamma_shape);
        std::gamma_distribution<double> dist(law.gamma_shape, scale);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = dist(engine) - mean;
    }
    return out;
}

}  // namespace covspec
