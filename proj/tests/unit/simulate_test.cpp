// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#include "covspec/errors.hpp"
#include "covspec/rng.hpp"
#include "covspec/sampling.hpp"
#include "covspec/simulate.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <set>

namespace covspec {
namespace {

using sim::Population;
using sim::SimScenario;
using sim::Truth;

TEST(Rng, SubstreamsAreDistinctAndReproducible) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(substream_seed(42, i));
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_NE(substream_seed(1, 0), substream_seed(2, 0));
    Engine a = make_substream(9, 3);
    Engine b = make_substream(9, 3);
    for (int i = 0; i < 10; ++i) EXPECT_EQ(a(), b());
}

TEST(Rng, ParallelForVisitsEveryIndexOnce) {
    std::vector<std::atomic<int>> hits(257);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
    EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                     if (i == 7) throw NumericalError("boom");
                 }),
                 NumericalError);
}

TEST(Sampling, LawMoments) {
    EXPECT_EQ(StandardizedLaw::normal().excess_kurtosis(), 0.0);
    EXPECT_DOUBLE_EQ(StandardizedLaw::gamma(4.0).excess_kurtosis(), 1.5);
    EXPECT_DOUBLE_EQ(StandardizedLaw::with_excess_kurtosis(1.5).gamma_shape, 4.0);
    EXPECT_EQ(StandardizedLaw::with_excess_kurtosis(0.0).kind, StandardizedLaw::Kind::Normal);
}

TEST(TridiagonalCholesky, MatchesDenseFactor) {
    for (double rho : {0.05, 0.15, 0.18, 0.45}) {
        const std::int64_t p = 12;
        Matrix sigma = Matrix::Identity(p, p);
        for (std::int64_t i = 0; i + 1 < p; ++i) sigma(i, i + 1) = sigma(i + 1, i) = rho;
        const Matrix dense = Eigen::LLT<Matrix>(sigma).matrixL();
        const sim::Bidiagonal f = sim::tridiagonal_cholesky(p, rho);
        Matrix l = Matrix::Zero(p, p);
        for (std::int64_t i = 0; i < p; ++i) l(i, i) = f.diagonal(i);
        for (std::int64_t i = 0; i + 1 < p; ++i) l(i + 1, i) = f.subdiagonal(i);
        EXPECT_LT((l - dense).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(TridiagonalCholesky, IndefiniteIsReported) {
    const double limit = sim::tridiagonal_rho_limit(10);
    EXPECT_NEAR(limit, 1.0 / (2.0 * std::cos(std::numbers::pi / 11.0)), 1e-15);
    EXPECT_NO_THROW(sim::tridiagonal_cholesky(10, limit - 1e-6));
    EXPECT_THROW(sim::tridiagonal_cholesky(10, limit + 1e-3), NumericalError);
}

TEST(GenSample, ZeroRhoEqualsNull) {
    SimScenario null;
    null.n = 40;
    null.p = 6;
    null.seed = 3;
    SimScenario alt = null;
    alt.truth = Truth::Tridiagonal;
    alt.rho = 0.0;
    for (Population pop : {Population::Normal, Population::Gamma}) {
        null.population = alt.population = pop;
        EXPECT_EQ(sim::gen_sample(null, 5).values(), sim::gen_sample(alt, 5).values());
    }
}

TEST(GenSample, NormalColumnMeans) {
    SimScenario s;
    s.n = 10000;
    s.p = 5;
    s.seed = 11;
    const Matrix x = sim::gen_sample(s, 0).values();
    for (Eigen::Index j = 0; j < 5; ++j) EXPECT_LT(std::abs(x.col(j).mean() - 2.0), 4.0 / std::sqrt(10000.0));
}

TEST(GenSample, GammaPooledVariance) {
    SimScenario s;
    s.n = 100000;
    s.p = 10;
    s.population = Population::Gamma;
    s.seed = 12;
    const Matrix x = sim::gen_sample(s, 0).values();
    const double mean = x.mean();
    const double var = (x.array() - mean).square().sum() / static_cast<double>(x.size() - 1);
    EXPECT_NEAR(var, 1.0, 0.01);
    EXPECT_NEAR(mean, 2.0, 0.01);
    EXPECT_GE(x.minCoeff(), 0.0);
}

TEST(GenSample, TridiagonalCovariance) {
    SimScenario s;
    s.n = 200000;
    s.p = 4;
    s.truth = Truth::Tridiagonal;
    s.rho = 0.15;
    s.seed = 13;
    for (Population pop : {Population::Normal, Population::Gamma}) {
        s.population = pop;
        const Matrix x = sim::gen_sample(s, 0).values();
        const Matrix c = x.rowwise() - x.colwise().mean();
        const Matrix cov = c.transpose() * c / static_cast<double>(s.n - 1);
        EXPECT_NEAR(cov(0, 0), 1.0, 0.02);
        EXPECT_NEAR(cov(1, 2), 0.15, 0.02);
        EXPECT_NEAR(cov(0, 2), 0.0, 0.02);
        EXPECT_NEAR(x.col(3).mean(), 2.0, 0.02);
    }
}

TEST(GenSample, ReplicationsDiffer) {
    SimScenario s;
    s.n = 10;
    s.p = 3;
    EXPECT_NE(sim::gen_sample(s, 0).values(), sim::gen_sample(s, 1).values());
    EXPECT_EQ(sim::gen_sample(s, 1).values(), sim::gen_sample(s, 1).values());
}

TEST(Scenario, Validation) {
    SimScenario s;
    s.n = 300;
    s.p = 299;
    EXPECT_THROW(s.validate(), ValidationError);
    s.p = 298;
    EXPECT_NO_THROW(s.validate());
    s.truth = Truth::Tridiagonal;
    s.rho = 0.6;
    EXPECT_THROW(s.validate(), ValidationError);
    s.rho = 0.15;
    EXPECT_NO_THROW(s.validate());
    s.tests.clear();
    EXPECT_THROW(s.validate(), ValidationError);
    SimScenario t;
    t.alpha = 0.0;
    EXPECT_THROW(t.validate(), ValidationError);
    t = SimScenario{};
    t.rho = 0.1;
    EXPECT_THROW(t.validate(), ValidationError);
}

TEST(Scenario, BetaDefaults) {
    SimScenario s;
    EXPECT_EQ(s.cwst_options().beta, 0.0);
    s.population = Population::Gamma;
    EXPECT_DOUBLE_EQ(s.cwst_options().beta, 1.5);
    s.beta = 0.0;
    EXPECT_EQ(s.cwst_options().beta, 0.0);
}

TEST(RunScenario, DeterministicAcrossWorkers) {
    SimScenario s;
    s.n = 60;
    s.p = 15;
    s.reps = 120;
    s.seed = 99;
    s.workers = 1;
    const auto serial = sim::run_scenario(s);
    s.workers = 4;
    const auto parallel = sim::run_scenario(s);
    const auto again = sim::run_scenario(s);
    ASSERT_EQ(serial.tallies.size(), 4u);
    for (std::size_t i = 0; i < serial.tallies.size(); ++i) {
        EXPECT_EQ(serial.tallies[i].rejections, parallel.tallies[i].rejections);
        EXPECT_EQ(serial.tallies[i].failures, parallel.tallies[i].failures);
        EXPECT_EQ(parallel.tallies[i].rejections, again.tallies[i].rejections);
    }
}

TEST(RunScenario, TallyInvariants) {
    SimScenario s;
    s.n = 50;
    s.p = 10;
    s.reps = 50;
    s.population = Population::Gamma;
    const auto summary = sim::run_scenario(s);
    for (const auto& t : summary.tallies) {
        EXPECT_LE(t.rejections, t.reps);
        EXPECT_EQ(t.reps, 50u);
        EXPECT_GE(t.rate(), 0.0);
        EXPECT_LE(t.rate(), 1.0);
    }
    SimScenario only_cwst = s;
    only_cwst.tests = {TestKind::Cwst};
    EXPECT_THROW(sim::run_scenario(only_cwst).tally(TestKind::Wst), ValidationError);
}

TEST(TestTally, FailuresLeaveTheDenominator) {
    sim::TestTally t;
    t.reps = 100;
    t.failures = 20;
    t.rejections = 8;
    EXPECT_EQ(t.evaluated(), 80u);
    EXPECT_DOUBLE_EQ(t.rate(), 0.1);
    EXPECT_DOUBLE_EQ(t.stderr_rate(), std::sqrt(0.1 * 0.9 / 80.0));
    t.failures = 100;
    EXPECT_EQ(t.rate(), 0.0);
}

TEST(PaperGrid, Layout) {
    const auto grid = sim::paper_grid();
    EXPECT_EQ(grid.size(), 16u);
    std::set<std::pair<std::int64_t, std::int64_t>> pairs;
    for (const auto& g : grid) {
        pairs.insert({g.n, g.p});
        EXPECT_LT(g.rho, sim::tridiagonal_rho_limit(g.p));
    }
    EXPECT_EQ(pairs.size(), 8u);
    EXPECT_TRUE(pairs.count({500, 320}));
}

}  // namespace
}  // namespace covspec
