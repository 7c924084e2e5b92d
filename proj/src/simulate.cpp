// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#include "covspec/simulate.hpp"

#include "covspec/errors.hpp"
#include "covspec/rng.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace covspec::sim {

std::string to_string(Population pop) { return pop == Population::Normal ? "normal" : "gamma"; }

std::string to_string(Truth truth) { return truth == Truth::Null ? "null" : "tridiagonal"; }

Population parse_population(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "normal") return Population::Normal;
    if (s == "gamma") return Population::Gamma;
    throw ValidationError("unknown population '" + std::string(name) + "' (normal|gamma)");
}

double tridiagonal_rho_limit(std::int64_t p) {
    if (p < 2) return std::numeric_limits<double>::infinity();
    return 1.0 / (2.0 * std::cos(std::numbers::pi / static_cast<double>(p + 1)));
}

void SimScenario::validate() const {
    std::ostringstream msg;
    if (n < 3) msg << "n must be >= 3; ";
    if (p < 1) msg << "p must be >= 1; ";
    if (p >= n - 1) msg << "p = " << p << " violates p < n - 1 = " << n - 1 << "; ";
    if (!(alpha > 0.0 && alpha < 1.0)) msg << "alpha must lie in (0, 1); ";
    if (reps < 1) msg << "reps must be >= 1; ";
    if (tests.empty()) msg << "no tests requested; ";
    if (!std::isfinite(mu0)) msg << "mu0 must be finite; ";
    if (population == Population::Gamma && !(gamma_shape > 0.0 && gamma_scale > 0.0)) {
        msg << "gamma shape and scale must be positive; ";
    }
    if (truth == Truth::Tridiagonal) {
        if (!(rho >= 0.0 && rho < 1.0)) msg << "rho must lie in [0, 1); ";
        else if (!(rho < tridiagonal_rho_limit(p))) {
            msg << "rho = " << rho << " makes the " << p << "x" << p << " tridiagonal covariance indefinite; ";
        }
    } else if (rho != 0.0) {
        msg << "rho must be 0 under the null; ";
    }
    if (std::find(tests.begin(), tests.end(), TestKind::Cwst) != tests.end() && p < 2) {
        msg << "CWST needs p >= 2; ";
    }
    if (beta && !(*beta >= -2.0)) msg << "beta must be >= -2; ";
    const std::string s = msg.str();
    if (!s.empty()) throw ValidationError("invalid scenario: " + s.substr(0, s.size() - 2));
}

double SimScenario::population_beta() const {
    return population == Population::Normal ? 0.0 : 6.0 / gamma_shape;
}

CwstOptions SimScenario::cwst_options() const {
    CwstOptions opts;
    opts.kappa = 2;
    opts.beta = beta.value_or(population_beta());
    opts.estimate_beta = estimate_beta;
    opts.side = side;
    return opts;
}

Bidiagonal tridiagonal_cholesky(std::int64_t p, double rho) {
    Bidiagonal out{Vector(p), Vector(std::max<std::int64_t>(p - 1, 0))};
    out.diagonal(0) = 1.0;
    for (std::int64_t j = 1; j < p; ++j) {
        const double l = rho / out.diagonal(j - 1);
        const double d2 = 1.0 - l * l;
        if (!(d2 > 0.0)) {
            throw NumericalError("tridiagonal covariance with rho = " + std::to_string(rho) +
                                 " is not positive definite at dimension " + std::to_string(p));
        }
        out.subdiagonal(j - 1) = l;
        out.diagonal(j) = std::sqrt(d2);
    }
    return out;
}

SampleGenerator::SampleGenerator(SimScenario scenario) : scenario_(std::move(scenario)) {
    scenario_.validate();
    if (scenario_.population == Population::Normal) {
        law_ = StandardizedLaw::normal();
        location_ = scenario_.mu0;
        spread_ = 1.0;
    } else {
        law_ = StandardizedLaw::gamma(scenario_.gamma_shape);
        location_ = scenario_.gamma_shape * scenario_.gamma_scale;
        spread_ = scenario_.gamma_scale * std::sqrt(scenario_.gamma_shape);
    }
    if (scenario_.truth == Truth::Tridiagonal) factor_ = tridiagonal_cholesky(scenario_.p, scenario_.rho);
}

DataMatrix SampleGenerator::sample(std::size_t replication) const {
    Engine engine = make_substream(scenario_.seed, replication);
    Matrix z = draw_standardized(scenario_.n, scenario_.p, law_, engine);
    if (factor_) {
        // Row-wise x = L z with L lower bidiagonal; walk columns downward so
        // z(:, j-1) is still unmodified when column j is formed.
        const auto& f = *factor_;
        for (Eigen::Index j = z.cols() - 1; j >= 1; --j) {
            z.col(j) = f.diagonal(j) * z.col(j) + f.subdiagonal(j - 1) * z.col(j - 1);
        }
        z.col(0) *= f.diagonal(0);
    }
    z.array() = location_ + spread_ * z.array();
    return DataMatrix(std::move(z));
}

DataMatrix gen_sample(const SimScenario& scenario, std::size_t replication) {
    return SampleGenerator(scenario).sample(replication);
}

double TestTally::rate() const {
    if (evaluated() == 0) return 0.0;
    return static_cast<double>(rejections) / static_cast<double>(evaluated());
}

double TestTally::stderr_rate() const {
    if (evaluated() == 0) return 0.0;
    const double r = rate();
    return std::sqrt(r * (1.0 - r) / static_cast<double>(evaluated()));
}

const TestTally& SimSummary::tally(TestKind kind) const {
    for (const auto& t : tallies) {
        if (t.test == kind) return t;
    }
    throw ValidationError("test " + to_string(kind) + " was not part of the scenario");
}

SimSummary run_scenario(const SimScenario& scenario) {
    const SampleGenerator generator(scenario);
    const HypothesisSpec hyp = HypothesisSpec::identity();
    const CwstOptions opts = scenario.cwst_options();
    const std::size_t k = scenario.tests.size();

    enum : std::uint8_t { kAccept = 0, kReject = 1, kFailed = 2 };
    std::vector<std::uint8_t> outcomes(scenario.reps * k, kAccept);

    parallel_for(scenario.reps, scenario.workers, [&](std::size_t r) {
        const DataMatrix data = generator.sample(r);
        for (std::size_t t = 0; t < k; ++t) {
            std::uint8_t& slot = outcomes[r * k + t];
            try {
                slot = run_test(scenario.tests[t], data, hyp, scenario.alpha, opts).reject ? kReject : kAccept;
            } catch (const NumericalError&) {
                slot = kFailed;
            }
        }
    });

    SimSummary summary{scenario, {}};
    for (std::size_t t = 0; t < k; ++t) {
        TestTally tally;
        tally.test = scenario.tests[t];
        tally.reps = scenario.reps;
        for (std::size_t r = 0; r < scenario.reps; ++r) {
            const auto o = outcomes[r * k + t];
            tally.rejections += o == kReject;
            tally.failures += o == kFailed;
        }
        summary.tallies.push_back(tally);
    }
    return summary;
}

std::vector<GridPoint> paper_grid() {
    return {
        // size and power cells
        {300, 80, 0.0},   {300, 80, 0.05},  {300, 80, 0.15},
        {300, 160, 0.0},  {300, 160, 0.05}, {300, 160, 0.18},
        {500, 160, 0.0},  {500, 160, 0.05}, {500, 160, 0.12},
        {500, 320, 0.0},  {500, 320, 0.05}, {500, 320, 0.15},
        // additional size cells
        {300, 120, 0.0},  {300, 200, 0.0},  {500, 80, 0.0},   {500, 240, 0.0},
    };
}

}  // namespace covspec::sim
