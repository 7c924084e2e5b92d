// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#include "covspec/mp.hpp"

#include "covspec/errors.hpp"
#include "covspec/quadrature.hpp"
#include "covspec/rng.hpp"
#include "covspec/sampling.hpp"
#include "covspec/spectral.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

namespace covspec::mp {

namespace {

void require_open_unit(double q, const char* what) {
    if (!(q > 0.0 && q < 1.0)) {
        std::ostringstream msg;
        msg << what << ": ratio q must lie in (0, 1), got " << q;
        throw ValidationError(msg.str());
    }
}

void validate_admitting_zero(const MpParams& params) {
    if (params.q == 0.0) {
        validate(MpParams{0.5, params.kappa, params.beta});
        return;
    }
    validate(params);
}

}  // namespace

void validate(const MpParams& params) {
    require_open_unit(params.q, "MpParams");
    if (params.kappa != 1 && params.kappa != 2) {
        throw ValidationError("kappa must be 1 (complex) or 2 (real), got " + std::to_string(params.kappa));
    }
    if (!(params.beta >= -2.0) || !std::isfinite(params.beta)) {
        throw ValidationError("beta must be finite and >= -2, got " + std::to_string(params.beta));
    }
}

double lower_edge(double q) {
    const double r = 1.0 - std::sqrt(q);
    return r * r;
}

double upper_edge(double q) {
    const double r = 1.0 + std::sqrt(q);
    return r * r;
}

double density(double x, double q) {
    require_open_unit(q, "mp density");
    const double a = lower_edge(q);
    const double b = upper_edge(q);
    if (!(x > a && x < b)) return 0.0;
    return std::sqrt((b - x) * (x - a)) / (2.0 * std::numbers::pi * x * q);
}

double limit_F(double q) {
    if (!(q >= 0.0 && q < 1.0)) {
        std::ostringstream msg;
        msg << "limit_F needs 0 <= q < 1, got " << q
            << " (for q > 1 the law has an atom at 0 and the functional is infinite)";
        throw ValidationError(msg.str());
    }
    const double s = 1.0 - q;
    return 1.0 - 2.0 / s + 1.0 / (s * s * s);
}

double limit_mean(const MpParams& params) {
    validate(params);
    const double q = params.q;
    const double k = params.kappa;
    const double s = 1.0 - q;
    const double t = q - 1.0;
    return -(k - 1.0) * q * (2.0 * q * q - 5.0 * q - 1.0) / (s * s * s * s) +
           params.beta * q * (2.0 * q * q - 3.0 * q - 1.0) / (t * t * t);
}

double limit_variance(const MpParams& params) {
    validate(params);
    const double q = params.q;
    const double k = params.kappa;
    const double t2 = (q - 1.0) * (q - 1.0);
    const double t6 = t2 * t2 * t2;
    const double t8 = t6 * t2;
    const double v = 2.0 * k * q * q * (2.0 * q * q * q - 12.0 * q * q + 18.0 * q + 1.0) / t8 +
                     4.0 * params.beta * q * q * q * (2.0 - q) * (2.0 - q) / t6;
    if (!(v > 0.0)) {
        std::ostringstream msg;
        msg << "limiting variance is nonpositive (" << v << ") at q=" << q << ", kappa=" << params.kappa
            << ", beta=" << params.beta;
        throw NumericalError(msg.str());
    }
    return v;
}

double limit_mean_or_zero(const MpParams& params) {
    validate_admitting_zero(params);
    return params.q == 0.0 ? 0.0 : limit_mean(params);
}

double limit_variance_or_zero(const MpParams& params) {
    validate_admitting_zero(params);
    return params.q == 0.0 ? 0.0 : limit_variance(params);
}

double integrate_against_density(const std::function<double(double)>& g, double q, double abs_tol) {
    require_open_unit(q, "integrate_against_density");
    const double root = std::sqrt(q);
    // density(x) dx = (2/pi) sin^2(theta) / x dtheta
    auto integrand = [&](double theta) {
        const double x = 1.0 + q - 2.0 * root * std::cos(theta);
        const double s = std::sin(theta);
        return g(x) * (2.0 / std::numbers::pi) * s * s / x;
    };
    return integrate_gk15(integrand, 0.0, std::numbers::pi, abs_tol).value;
}

double oracle_quadrature_F(double q, double abs_tol) {
    auto f = [](double x) {
        const double d = 1.0 - 1.0 / x;
        return d * d;
    };
    return integrate_against_density(f, q, abs_tol);
}

CltMoments oracle_clt_moments(const MpParams& params, std::size_t n, std::size_t reps, std::uint64_t seed,
                              unsigned workers) {
    validate(params);
    if (params.kappa != 2) {
        throw ValidationError("Monte Carlo CLT check draws real entries; kappa must be 2");
    }
    if (reps < 2) throw ValidationError("need at least 2 replications");
    const auto p = static_cast<std::size_t>(std::llround(params.q * static_cast<double>(n)));
    if (p < 2 || p >= n) {
        std::ostringstream msg;
        msg << "p = round(q n) = " << p << " must satisfy 2 <= p < n = " << n;
        throw ValidationError(msg.str());
    }
    const StandardizedLaw law = StandardizedLaw::with_excess_kurtosis(params.beta);
    const double centering = static_cast<double>(p) * limit_F(static_cast<double>(p) / static_cast<double>(n));
    const auto ni = static_cast<Eigen::Index>(n);
    const auto pi = static_cast<Eigen::Index>(p);

    std::vector<std::optional<double>> draws(reps);
    parallel_for(reps, workers, [&](std::size_t r) {
        Engine engine = make_substream(seed, r);
        const Matrix xi = draw_standardized(ni, pi, law, engine);
        Matrix s = Matrix::Zero(pi, pi);
        s.selfadjointView<Eigen::Lower>().rankUpdate(xi.transpose(), 1.0 / static_cast<double>(n));
        s.triangularView<Eigen::StrictlyUpper>() = s.transpose();
        const Spectrum spec = symmetric_spectrum(s);
        if (!(spec.min() > kPdTolerance * spec.max())) return;
        double lss = 0.0;
        for (Eigen::Index i = 0; i < spec.size(); ++i) {
            const double d = 1.0 - 1.0 / spec.eigenvalues(i);
            lss += d * d;
        }
        draws[r] = lss - centering;
    });

    CltMoments out;
    out.p = p;
    double sum = 0.0;
    for (const auto& d : draws) {
        if (d) {
            sum += *d;
            ++out.accepted;
        } else {
            ++out.rejected;
        }
    }
    if (out.accepted < 2) throw NumericalError("fewer than 2 replications produced a nonsingular S_n");
    out.mean = sum / static_cast<double>(out.accepted);
    double ss = 0.0;
    for (const auto& d : draws) {
        if (d) ss += (*d - out.mean) * (*d - out.mean);
    }
    out.variance = ss / static_cast<double>(out.accepted - 1);
    out.stderr_mean = std::sqrt(out.variance / static_cast<double>(out.accepted));
    return out;
}

}  // namespace covspec::mp
