// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "covspec/hypothesis.hpp"
#include "covspec/sampling.hpp"
#include "covspec/spectral.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace covspec::sim {

enum class Population { Normal, Gamma };
enum class Truth { Null, Tridiagonal };

std::string to_string(Population pop);
std::string to_string(Truth truth);
Population parse_population(std::string_view name);

/// One Monte Carlo experiment on the identity null.
///
/// Normal: rows ~ N(mu0 * 1, Sigma). Gamma: rows are shape*scale + scale*sqrt(shape) * L z
/// with z iid standardized Gamma(shape), so Sigma = scale^2 * shape * L L^T; the default
/// Gamma(4, 0.5) has mean 2 and unit variance. Sigma = I under Null and the
/// tridiagonal matrix with unit diagonal and off-diagonal rho otherwise.
struct SimScenario {
    std::int64_t n = 300;
    std::int64_t p = 80;
    Population population = Population::Normal;
    double mu0 = 2.0;
    double gamma_shape = 4.0;
    double gamma_scale = 0.5;
    Truth truth = Truth::Null;
    double rho = 0.0;
    std::vector<TestKind> tests{TestKind::Cwst, TestKind::Lwt, TestKind::Nht, TestKind::Wst};
    double alpha = 0.05;
    std::size_t reps = 2000;
    std::uint64_t seed = 1;
    Tail side = Tail::Upper;
    std::optional<double> beta;  // CWST beta; absent means the population's true value
    bool estimate_beta = false;  // overrides `beta` with the plug-in estimate
    unsigned workers = 0;        // 0 = hardware concurrency

    /// Throws ValidationError on an unusable configuration.
    void validate() const;

    /// Fourth-cumulant parameter of the population innovations.
    double population_beta() const;

    CwstOptions cwst_options() const;
};

/// Largest rho for which the p x p tridiagonal matrix is positive definite:
/// 1 / (2 cos(pi / (p + 1))).
double tridiagonal_rho_limit(std::int64_t p);

/// Lower bidiagonal Cholesky factor of tridiag(rho, 1, rho), returned as
/// (diagonal, subdiagonal). Throws NumericalError if the matrix is not PD.
struct Bidiagonal {
    Vector diagonal;
    Vector subdiagonal;  // length p - 1
};
Bidiagonal tridiagonal_cholesky(std::int64_t p, double rho);

/// Reusable sampler for one scenario; sample(r) is a pure function of (scenario, r).
class SampleGenerator {
public:
    explicit SampleGenerator(SimScenario scenario);

    DataMatrix sample(std::size_t replication) const;
    const SimScenario& scenario() const noexcept { return scenario_; }

private:
    SimScenario scenario_;
    StandardizedLaw law_;
    std::optional<Bidiagonal> factor_;
    double location_ = 0.0;
    double spread_ = 1.0;
};

DataMatrix gen_sample(const SimScenario& scenario, std::size_t replication);

struct TestTally {
    TestKind test = TestKind::Cwst;
    std::size_t rejections = 0;
    std::size_t failures = 0;  // replications where the test raised NumericalError
    std::size_t reps = 0;

    std::size_t evaluated() const noexcept { return reps - failures; }
    double rate() const;
    double stderr_rate() const;
};

struct SimSummary {
    SimScenario scenario;
    std::vector<TestTally> tallies;  // same order as scenario.tests

    const TestTally& tally(TestKind kind) const;
};

SimSummary run_scenario(const SimScenario& scenario);

struct GridPoint {
    std::int64_t n;
    std::int64_t p;
    double rho;
};

/// (n, p, rho) cells of the published size/power tables: every size cell
/// (rho = 0) of both tables plus the power cells of the first.
std::vector<GridPoint> paper_grid();

}  // namespace covspec::sim
