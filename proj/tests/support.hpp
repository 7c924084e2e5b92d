// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace covspec::testing {

inline Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> z;
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = z(gen);
    return m;
}

// Well-conditioned SPD matrix: B B^T / p + I.
inline Eigen::MatrixXd random_spd(Eigen::Index p, std::uint64_t seed) {
    const Eigen::MatrixXd b = gaussian_matrix(p, p, seed);
    return b * b.transpose() / static_cast<double>(p) + Eigen::MatrixXd::Identity(p, p);
}

// Triangular-dominant matrix, invertible by construction.
inline Eigen::MatrixXd random_invertible(Eigen::Index p, std::uint64_t seed) {
    Eigen::MatrixXd a = 0.3 * gaussian_matrix(p, p, seed);
    a.diagonal().array() += 2.0;
    return a;
}

// Covariance by explicit double loops with divisor n.
inline Eigen::MatrixXd loop_covariance(const Eigen::MatrixXd& x) {
    const auto n = x.rows();
    const auto p = x.cols();
    std::vector<double> mean(static_cast<std::size_t>(p), 0.0);
    for (Eigen::Index j = 0; j < p; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) mean[j] += x(i, j);
        mean[j] /= static_cast<double>(n);
    }
    Eigen::MatrixXd s(p, p);
    for (Eigen::Index a = 0; a < p; ++a)
        for (Eigen::Index b = 0; b < p; ++b) {
            double acc = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) acc += (x(i, a) - mean[a]) * (x(i, b) - mean[b]);
            s(a, b) = acc / static_cast<double>(n);
        }
    return s;
}

// Symmetric inverse square root through the eigendecomposition.
inline Eigen::MatrixXd inverse_sqrt(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
           es.eigenvectors().transpose();
}

// n = 2p + 1 rows: +-c e_i and one zero row. Mean is exactly zero and the
// unbiased covariance is exactly (c^2 / p) I when c^2 / p is representable.
inline Eigen::MatrixXd axis_design(Eigen::Index p, double c) {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(2 * p + 1, p);
    for (Eigen::Index i = 0; i < p; ++i) {
        x(2 * i, i) = c;
        x(2 * i + 1, i) = -c;
    }
    return x;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace covspec::testing
