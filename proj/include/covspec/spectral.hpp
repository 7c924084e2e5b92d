// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <optional>

namespace covspec {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative eigenvalue floor below which a matrix is treated as singular.
inline constexpr double kPdTolerance = 1e-10;

/// An n x p sample, one observation per row. Construction validates
/// n >= 2, p >= 1 and finiteness of every entry.
class DataMatrix {
public:
    explicit DataMatrix(Matrix values);

    const Matrix& values() const noexcept { return values_; }
    Eigen::Index n() const noexcept { return values_.rows(); }
    Eigen::Index p() const noexcept { return values_.cols(); }

private:
    Matrix values_;
};

struct CovarianceEstimate {
    Matrix sigma_hat;  // maximum likelihood estimate, divisor n
    Vector mean_hat;   // sample mean, or the supplied mean when known
    bool mean_known = false;
    Eigen::Index n = 0;
};

/// Eigenvalues in ascending order.
struct Spectrum {
    Vector eigenvalues;

    Eigen::Index size() const noexcept { return eigenvalues.size(); }
    double sum() const { return eigenvalues.sum(); }
    double min() const { return eigenvalues(0); }
    double max() const { return eigenvalues(eigenvalues.size() - 1); }
};

CovarianceEstimate estimate_covariance(const DataMatrix& data,
                                       const std::optional<Vector>& known_mean = std::nullopt);

/// Scale that turns sigma_hat into the matrix whose spectrum follows the
/// Marchenko-Pastur law: n/(n-1) when the mean was estimated, 1 otherwise.
double bias_correction(const CovarianceEstimate& est);

/// Eigenvalues of scale * sigma0^{-1/2} sigma_hat sigma0^{-1/2} via the
/// Cholesky factor of sigma0 (the spectrum of scale * sigma_hat * sigma0^{-1}).
Spectrum whitened_spectrum(const Matrix& sigma_hat, const Matrix& sigma0, double scale);

/// Eigenvalues of bias_correction(est) * sigma_hat * sigma0^{-1}, computed on
/// the similar symmetric matrix L^{-1} sigma_hat L^{-T} with sigma0 = L L^T.
Spectrum whiten(const CovarianceEstimate& est, const Matrix& sigma0);

/// Symmetric eigenvalues of m (ascending). m is symmetrized first.
Spectrum symmetric_spectrum(const Matrix& m);

/// Throws ValidationError unless m is square, finite, symmetric and its
/// smallest eigenvalue exceeds kPdTolerance times its largest.
void require_spd(const Matrix& m, const char* name);

/// Pooled excess kurtosis of the whitened, centered entries: the plug-in
/// estimate of the fourth-cumulant parameter for real data. Clamped at -2.
double estimate_beta(const DataMatrix& data, const Matrix& sigma0,
                     const std::optional<Vector>& known_mean = std::nullopt);

}  // namespace covspec
