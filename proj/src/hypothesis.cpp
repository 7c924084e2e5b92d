// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#include "covspec/hypothesis.hpp"

#include "covspec/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

namespace covspec {

namespace {

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ValidationError("alpha must lie in (0, 1), got " + std::to_string(alpha));
    }
}

// Sigma_hat must be invertible: p < n - 1 with an estimated mean, p < n otherwise.
void require_invertible_regime(const DataMatrix& data, bool mean_known) {
    const auto limit = mean_known ? data.n() : data.n() - 1;
    if (data.p() >= limit) {
        std::ostringstream msg;
        msg << "p = " << data.p() << " needs p < " << (mean_known ? "n" : "n - 1") << " = " << limit
            << " for an invertible sample covariance";
        throw ValidationError(msg.str());
    }
}

void require_nonsingular(const Spectrum& spec, const char* what) {
    if (!(spec.min() > kPdTolerance * spec.max())) {
        std::ostringstream msg;
        msg << what << " is numerically singular (smallest eigenvalue " << spec.min() << ", largest "
            << spec.max() << ")";
        throw NumericalError(msg.str());
    }
}

double sum_sq_distance(const Spectrum& spec, double shift) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < spec.size(); ++i) {
        const double d = 1.0 - shift / spec.eigenvalues(i);
        acc += d * d;
    }
    return acc;
}

TestReport base_report(std::string name, const DataMatrix& data, const HypothesisSpec& hyp, double alpha) {
    TestReport r;
    r.test_name = std::move(name);
    r.alpha = alpha;
    r.null_kind = hyp.kind;
    r.n = data.n();
    r.p = data.p();
    r.mean_known = hyp.mean_known();
    return r;
}

void decide(TestReport& r) {
    r.p_value = pvalue(r.statistic, r.reference, r.side);
    r.reject = r.p_value < r.alpha;
}

// Covariance used by the baseline tests: unbiased (divisor n - 1) with an
// estimated mean, divisor n around a known mean.
Matrix baseline_covariance(const DataMatrix& data, const std::optional<Vector>& known_mean) {
    const CovarianceEstimate est = estimate_covariance(data, known_mean);
    return est.sigma_hat * bias_correction(est);
}

}  // namespace

std::string to_string(NullKind kind) {
    switch (kind) {
        case NullKind::GeneralSigma0: return "general";
        case NullKind::Identity: return "identity";
        case NullKind::Sphericity: return "sphericity";
    }
    return "?";
}

NullKind parse_null_kind(std::string_view name) {
    const std::string s = lowercase(name);
    if (s == "general" || s == "sigma0") return NullKind::GeneralSigma0;
    if (s == "identity") return NullKind::Identity;
    if (s == "sphericity") return NullKind::Sphericity;
    throw ValidationError("unknown null hypothesis '" + std::string(name) + "' (general|identity|sphericity)");
}

std::string to_string(TestKind kind) {
    switch (kind) {
        case TestKind::Cwst: return "CWST";
        case TestKind::Wst: return "WST";
        case TestKind::Lwt: return "LWT";
        case TestKind::Nht: return "NHT";
    }
    return "?";
}

TestKind parse_test_kind(std::string_view name) {
    const std::string s = lowercase(name);
    if (s == "cwst") return TestKind::Cwst;
    if (s == "wst") return TestKind::Wst;
    if (s == "lwt" || s == "lw") return TestKind::Lwt;
    if (s == "nht" || s == "nagao") return TestKind::Nht;
    throw ValidationError("unknown test '" + std::string(name) + "' (cwst|wst|lwt|nht)");
}

void HypothesisSpec::validate(Eigen::Index p) const {
    if (kind == NullKind::GeneralSigma0) {
        if (!sigma0) throw ValidationError("general null needs sigma0");
        if (sigma0->rows() != p || sigma0->cols() != p) {
            std::ostringstream msg;
            msg << "sigma0 is " << sigma0->rows() << "x" << sigma0->cols() << ", data dimension is " << p;
            throw ValidationError(msg.str());
        }
        require_spd(*sigma0, "sigma0");
    }
    if (known_mean && known_mean->size() != p) {
        throw ValidationError("known mean length does not match the data dimension");
    }
}

std::int64_t classical_df(std::int64_t p, NullKind kind) {
    // p(p+1)/2 must fit in int64
    if (p < 1 || p > 3'000'000'000LL) throw ValidationError("dimension out of range for chi-squared df");
    const std::int64_t df = p * (p + 1) / 2;
    return kind == NullKind::Sphericity ? df - 1 : df;
}

TestReport wst_classical(const DataMatrix& data, const HypothesisSpec& hyp, double alpha) {
    require_alpha(alpha);
    hyp.validate(data.p());
    require_invertible_regime(data, hyp.mean_known());
    const CovarianceEstimate est = estimate_covariance(data, hyp.known_mean);

    double trace_term = 0.0;
    if (hyp.kind == NullKind::GeneralSigma0) {
        // tr[(I - Sigma0 S^{-1})^2] = sum (1 - 1/mu_i)^2, mu_i eigenvalues of S Sigma0^{-1}
        const Spectrum spec = whitened_spectrum(est.sigma_hat, *hyp.sigma0, 1.0);
        require_nonsingular(spec, "sigma_hat");
        trace_term = sum_sq_distance(spec, 1.0);
    } else {
        const Spectrum spec = symmetric_spectrum(est.sigma_hat);
        require_nonsingular(spec, "sigma_hat");
        const double shift = hyp.kind == NullKind::Sphericity ? spec.sum() / static_cast<double>(spec.size()) : 1.0;
        trace_term = sum_sq_distance(spec, shift);
    }

    TestReport r = base_report("WST", data, hyp, alpha);
    r.statistic = 0.5 * static_cast<double>(data.n()) * trace_term;
    r.reference = ChiSquared{classical_df(data.p(), hyp.kind)};
    r.side = Tail::Upper;
    decide(r);
    return r;
}

RescaledSpectrum rescaled_spectrum(const DataMatrix& data, const HypothesisSpec& hyp) {
    hyp.validate(data.p());
    require_invertible_regime(data, hyp.mean_known());
    const CovarianceEstimate est = estimate_covariance(data, hyp.known_mean);
    RescaledSpectrum out;
    const auto n = static_cast<double>(data.n());
    const auto p = static_cast<double>(data.p());
    out.q_n = hyp.mean_known() ? p / n : p / (n - 1.0);

    switch (hyp.kind) {
        case NullKind::GeneralSigma0:
            out.spectrum = whiten(est, *hyp.sigma0);
            break;
        case NullKind::Identity:
            out.spectrum = symmetric_spectrum(bias_correction(est) * est.sigma_hat);
            break;
        case NullKind::Sphericity: {
            Spectrum spec = symmetric_spectrum(bias_correction(est) * est.sigma_hat);
            const double gamma_hat = spec.sum() / p;
            if (!(gamma_hat > 0.0)) throw NumericalError("estimated scale tr(Sigma)/p is not positive");
            spec.eigenvalues /= gamma_hat;
            out.spectrum = std::move(spec);
            break;
        }
    }
    require_nonsingular(out.spectrum, "rescaled covariance");
    return out;
}

double wst_rescaled(const DataMatrix& data, const HypothesisSpec& hyp) {
    const RescaledSpectrum rs = rescaled_spectrum(data, hyp);
    return 0.5 * static_cast<double>(data.n()) * sum_sq_distance(rs.spectrum, 1.0);
}

TestReport cwst(const DataMatrix& data, const HypothesisSpec& hyp, double alpha, const CwstOptions& opts) {
    require_alpha(alpha);
    if (data.p() < 2) throw ValidationError("CWST needs p >= 2");
    const RescaledSpectrum rs = rescaled_spectrum(data, hyp);
    if (!(rs.q_n > 0.0 && rs.q_n < 1.0)) {
        throw ValidationError("CWST needs q_n in (0, 1), got " + std::to_string(rs.q_n));
    }

    mp::MpParams params{rs.q_n, opts.kappa, opts.beta};
    if (opts.estimate_beta) {
        const Matrix sigma0 = hyp.kind == NullKind::GeneralSigma0 ? *hyp.sigma0 : Matrix::Identity(data.p(), data.p());
        params.beta = estimate_beta(data, sigma0, hyp.known_mean);
    }
    const double variance = mp::limit_variance(params);
    if (variance < 1e-12) {
        throw NumericalError("limiting variance " + std::to_string(variance) + " is too small to normalize by");
    }
    const double lss = sum_sq_distance(rs.spectrum, 1.0);
    const double centered = lss - static_cast<double>(data.p()) * mp::limit_F(rs.q_n) - mp::limit_mean(params);

    TestReport r = base_report("CWST", data, hyp, alpha);
    r.statistic = centered / std::sqrt(variance);
    r.reference = StdNormal{};
    r.side = opts.side;
    r.params_used = params;
    r.beta_estimated = opts.estimate_beta;
    r.wst_rescaled = 0.5 * static_cast<double>(data.n()) * lss;
    decide(r);
    return r;
}

TestReport lw_test(const DataMatrix& data, double alpha, const std::optional<Vector>& known_mean) {
    require_alpha(alpha);
    if (known_mean && known_mean->size() != data.p()) throw ValidationError("known mean length mismatch");
    const Matrix s = baseline_covariance(data, known_mean);
    const auto n = static_cast<double>(data.n());
    const auto p = static_cast<double>(data.p());
    const double dist = (s - Matrix::Identity(data.p(), data.p())).squaredNorm() / p;
    const double scale = s.trace() / p;
    const double w = dist - (p / n) * scale * scale + p / n;

    HypothesisSpec hyp;
    hyp.known_mean = known_mean;
    TestReport r = base_report("LWT", data, hyp, alpha);
    r.statistic = (n * w - p - 1.0) / 2.0;
    r.reference = StdNormal{};
    r.side = Tail::Upper;
    decide(r);
    return r;
}

TestReport nagao_test(const DataMatrix& data, double alpha, const std::optional<Vector>& known_mean) {
    require_alpha(alpha);
    if (known_mean && known_mean->size() != data.p()) throw ValidationError("known mean length mismatch");
    const Matrix s = baseline_covariance(data, known_mean);
    const auto n = static_cast<double>(data.n());

    HypothesisSpec hyp;
    hyp.known_mean = known_mean;
    TestReport r = base_report("NHT", data, hyp, alpha);
    r.statistic = 0.5 * n * (s - Matrix::Identity(data.p(), data.p())).squaredNorm();
    r.reference = ChiSquared{classical_df(data.p(), NullKind::Identity)};
    r.side = Tail::Upper;
    decide(r);
    return r;
}

TestReport run_test(TestKind kind, const DataMatrix& data, const HypothesisSpec& hyp, double alpha,
                    const CwstOptions& opts) {
    switch (kind) {
        case TestKind::Cwst: return cwst(data, hyp, alpha, opts);
        case TestKind::Wst: return wst_classical(data, hyp, alpha);
        case TestKind::Lwt:
        case TestKind::Nht:
            if (hyp.kind != NullKind::Identity) {
                throw ValidationError(to_string(kind) + " is defined for the identity null only");
            }
            return kind == TestKind::Lwt ? lw_test(data, alpha, hyp.known_mean)
                                         : nagao_test(data, alpha, hyp.known_mean);
    }
    throw ValidationError("unknown test kind");
}

}  // namespace covspec
