// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#include "covspec/spectral.hpp"

#include "covspec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>

namespace covspec {

namespace {

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

Eigen::LLT<Matrix> factor_spd(const Matrix& sigma0) {
    require_spd(sigma0, "sigma0");
    Eigen::LLT<Matrix> llt(symmetrized(sigma0));
    if (llt.info() != Eigen::Success) {
        throw NumericalError("Cholesky factorization of sigma0 failed");
    }
    return llt;
}

}  // namespace

DataMatrix::DataMatrix(Matrix values) : values_(std::move(values)) {
    if (values_.rows() < 2) {
        throw ValidationError("data needs at least 2 observations, got " +
                              std::to_string(values_.rows()));
    }
    if (values_.cols() < 1) {
        throw ValidationError("data needs at least 1 column");
    }
    if (!values_.allFinite()) {
        throw ValidationError("data contains non-finite entries");
    }
}

CovarianceEstimate estimate_covariance(const DataMatrix& data, const std::optional<Vector>& known_mean) {
    const auto n = data.n();
    const auto p = data.p();
    CovarianceEstimate est;
    est.n = n;
    if (known_mean) {
        if (known_mean->size() != p) {
            std::ostringstream msg;
            msg << "known mean has length " << known_mean->size() << ", data has " << p << " columns";
            throw ValidationError(msg.str());
        }
        if (!known_mean->allFinite()) throw ValidationError("known mean contains non-finite entries");
        est.mean_hat = *known_mean;
        est.mean_known = true;
    } else {
        est.mean_hat = data.values().colwise().mean().transpose();
    }
    const Matrix centered = data.values().rowwise() - est.mean_hat.transpose();
    Matrix s = Matrix::Zero(p, p);
    s.selfadjointView<Eigen::Lower>().rankUpdate(centered.transpose());
    s.triangularView<Eigen::StrictlyUpper>() = s.transpose();
    est.sigma_hat = symmetrized(s / static_cast<double>(n));
    return est;
}

double bias_correction(const CovarianceEstimate& est) {
    if (est.mean_known) return 1.0;
    const auto n = static_cast<double>(est.n);
    return n / (n - 1.0);
}

Spectrum symmetric_spectrum(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(m), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("symmetric eigensolver did not converge");
    }
    Spectrum out{solver.eigenvalues()};
    if (!out.eigenvalues.allFinite()) throw NumericalError("non-finite eigenvalue");
    return out;
}

void require_spd(const Matrix& m, const char* name) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw ValidationError(std::string(name) + " must be a non-empty square matrix");
    }
    if (!m.allFinite()) throw ValidationError(std::string(name) + " contains non-finite entries");
    const double scale = m.cwiseAbs().maxCoeff();
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-8 * std::max(scale, 1.0)) {
        throw ValidationError(std::string(name) + " is not symmetric");
    }
    const Spectrum spec = symmetric_spectrum(m);
    if (!(spec.min() > kPdTolerance * spec.max())) {
        std::ostringstream msg;
        msg << name << " is not positive definite: smallest eigenvalue " << spec.min()
            << " (largest " << spec.max() << ")";
        throw ValidationError(msg.str());
    }
}

Spectrum whitened_spectrum(const Matrix& sigma_hat, const Matrix& sigma0, double scale) {
    if (sigma0.rows() != sigma_hat.rows()) {
        std::ostringstream msg;
        msg << "sigma0 is " << sigma0.rows() << "x" << sigma0.cols() << " but data has dimension "
            << sigma_hat.rows();
        throw ValidationError(msg.str());
    }
    const auto llt = factor_spd(sigma0);
    // L^{-1} S L^{-T}
    const Matrix half = llt.matrixL().solve(sigma_hat);
    const Matrix w = llt.matrixL().solve(half.transpose());
    return symmetric_spectrum(scale * w);
}

Spectrum whiten(const CovarianceEstimate& est, const Matrix& sigma0) {
    return whitened_spectrum(est.sigma_hat, sigma0, bias_correction(est));
}

double estimate_beta(const DataMatrix& data, const Matrix& sigma0, const std::optional<Vector>& known_mean) {
    if (sigma0.rows() != data.p()) {
        throw ValidationError("sigma0 dimension does not match the data");
    }
    const auto llt = factor_spd(sigma0);
    const Vector mean = known_mean ? *known_mean : Vector(data.values().colwise().mean().transpose());
    if (mean.size() != data.p()) throw ValidationError("known mean length does not match the data");
    const Matrix centered = data.values().rowwise() - mean.transpose();
    // Rows are observations, so whiten the transpose column by column.
    const Matrix z = llt.matrixL().solve(centered.transpose());
    const Vector row_ss = z.array().square().rowwise().sum();
    // Centering a constant column leaves rounding residue, not exact zeros.
    const double resolution = 1e-13 * std::max(1.0, centered.cwiseAbs().maxCoeff() + mean.cwiseAbs().maxCoeff());
    const double floor = static_cast<double>(data.n()) * resolution * resolution;
    for (Eigen::Index j = 0; j < row_ss.size(); ++j) {
        if (!(row_ss(j) > floor)) {
            throw NumericalError("whitened coordinate " + std::to_string(j) +
                                 " has zero variance; fourth moment undefined");
        }
    }
    const double count = static_cast<double>(z.size());
    const double m2 = row_ss.sum() / count;
    const double m4 = z.array().square().square().sum() / count;
    // Standardize by the pooled second moment so a scale mismatch with sigma0
    // does not leak into the kurtosis.
    const double beta = m4 / (m2 * m2) - 3.0;
    return std::max(beta, -2.0);
}

}  // namespace covspec
