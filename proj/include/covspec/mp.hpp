// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace covspec::mp {

/// Limiting-regime parameters of the linear-spectral-statistic CLT.
///   q     dimension-to-sample ratio, 0 < q < 1
///   kappa 2 for real data, 1 for complex data
///   beta  fourth-cumulant parameter, E[xi^4] = beta + kappa + 1
struct MpParams {
    double q = 0.0;
    int kappa = 2;
    double beta = 0.0;
};

/// Throws ValidationError unless 0 < q < 1, kappa in {1, 2}, beta >= -2.
void validate(const MpParams& params);

/// Support edges (1 -+ sqrt(q))^2 of the Marchenko-Pastur law.
double lower_edge(double q);
double upper_edge(double q);

/// Marchenko-Pastur density of index q in (0, 1); zero off the support.
double density(double x, double q);

// The functionals below are all for f(x) = (1 - 1/x)^2.

/// Integral of f against the Marchenko-Pastur law of index q, 0 <= q < 1.
/// q >= 1 is an error: the law then has an atom at the origin where f blows up.
double limit_F(double q);

/// Mean of the limiting Gaussian for G_n(f).
double limit_mean(const MpParams& params);

/// Variance of the limiting Gaussian for G_n(f).
double limit_variance(const MpParams& params);

/// Same closed forms with the q = 0 endpoint admitted (returns 0).
/// Used by reporting code that tabulates the q -> 0 limit.
double limit_mean_or_zero(const MpParams& params);
double limit_variance_or_zero(const MpParams& params);

/// Integral of g against the density of index q by adaptive Gauss-Kronrod
/// after the substitution x = 1 + q - 2 sqrt(q) cos(theta), which removes the
/// square-root behaviour at both edges.
double integrate_against_density(const std::function<double(double)>& g, double q, double abs_tol);

/// Independent numerical route to limit_F.
double oracle_quadrature_F(double q, double abs_tol = 1e-9);

struct CltMoments {
    double mean = 0.0;         // sample mean of G_n(f)
    double variance = 0.0;     // unbiased sample variance
    double stderr_mean = 0.0;  // sqrt(variance / accepted)
    std::size_t accepted = 0;
    std::size_t rejected = 0;  // replications with a numerically singular S_n
    std::size_t p = 0;
};

/// Monte Carlo draw of G_n(f) = sum (1 - 1/lambda_i)^2 - p * limit_F(p/n) over
/// `reps` independent n x p matrices of standardized iid entries
/// (normal when beta = 0, standardized Gamma(6/beta) when beta > 0),
/// with p = round(q n). Deterministic in (params, n, reps, seed).
CltMoments oracle_clt_moments(const MpParams& params, std::size_t n, std::size_t reps,
                              std::uint64_t seed, unsigned workers = 0);

}  // namespace covspec::mp
