// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "covspec/distributions.hpp"
#include "covspec/mp.hpp"
#include "covspec/spectral.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace covspec {

enum class NullKind { GeneralSigma0, Identity, Sphericity };

std::string to_string(NullKind kind);
NullKind parse_null_kind(std::string_view name);

/// H0: Sigma = sigma0 (GeneralSigma0), Sigma = I (Identity), or
/// Sigma = gamma I with gamma unknown (Sphericity).
struct HypothesisSpec {
    NullKind kind = NullKind::Identity;
    std::optional<Matrix> sigma0;      // required for GeneralSigma0
    std::optional<Vector> known_mean;  // absent: mean estimated from the sample

    static HypothesisSpec identity() { return {}; }
    static HypothesisSpec sphericity() { return {NullKind::Sphericity, std::nullopt, std::nullopt}; }
    static HypothesisSpec general(Matrix sigma0) { return {NullKind::GeneralSigma0, std::move(sigma0), std::nullopt}; }

    bool mean_known() const noexcept { return known_mean.has_value(); }

    /// Validates shapes against p and the SPD requirement on sigma0.
    void validate(Eigen::Index p) const;
};

enum class TestKind { Cwst, Wst, Lwt, Nht };

std::string to_string(TestKind kind);
TestKind parse_test_kind(std::string_view name);

struct TestReport {
    std::string test_name;
    double statistic = 0.0;
    Reference reference = StdNormal{};
    double p_value = 1.0;
    double alpha = 0.05;
    bool reject = false;
    Tail side = Tail::Upper;
    NullKind null_kind = NullKind::Identity;
    std::int64_t n = 0;
    std::int64_t p = 0;
    bool mean_known = false;
    std::optional<mp::MpParams> params_used;  // CWST only; q is q_n
    bool beta_estimated = false;
    std::optional<double> wst_rescaled;  // CWST only
};

/// Degrees of freedom of the classical chi-squared limit:
/// p(p+1)/2, less one for sphericity.
std::int64_t classical_df(std::int64_t p, NullKind kind);

/// Classical Wald score test (n/2) tr[(I - Sigma0 Sigma_hat^{-1})^2] with a
/// fixed-p chi-squared reference.
TestReport wst_classical(const DataMatrix& data, const HypothesisSpec& hyp, double alpha);

/// Eigenvalues of the bias-corrected, whitened covariance together with the
/// ratio q_n used by the corrected test. For sphericity the spectrum is
/// already divided by the estimated scale.
struct RescaledSpectrum {
    Spectrum spectrum;
    double q_n = 0.0;
};

RescaledSpectrum rescaled_spectrum(const DataMatrix& data, const HypothesisSpec& hyp);

/// (n/2) * sum (1 - 1/lambda_i)^2 over rescaled_spectrum.
double wst_rescaled(const DataMatrix& data, const HypothesisSpec& hyp);

struct CwstOptions {
    int kappa = 2;
    double beta = 0.0;           // used unless estimate_beta is set
    bool estimate_beta = false;  // plug-in pooled excess kurtosis
    Tail side = Tail::Upper;
};

/// Random-matrix corrected Wald score test with a standard normal reference:
/// [sum (1 - 1/lambda_i)^2 - p F(q_n) - mu] / sqrt(v).
TestReport cwst(const DataMatrix& data, const HypothesisSpec& hyp, double alpha, const CwstOptions& opts = {});

/// Ledoit-Wolf (2002) identity test, standard normal upper tail.
TestReport lw_test(const DataMatrix& data, double alpha, const std::optional<Vector>& known_mean = std::nullopt);

/// Nagao (1973) identity test, (n/2) tr[(S - I)^2] against chi2(p(p+1)/2).
TestReport nagao_test(const DataMatrix& data, double alpha, const std::optional<Vector>& known_mean = std::nullopt);

/// Dispatches on `kind`. The baselines accept only the identity null.
TestReport run_test(TestKind kind, const DataMatrix& data, const HypothesisSpec& hyp, double alpha,
                    const CwstOptions& opts = {});

}  // namespace covspec
