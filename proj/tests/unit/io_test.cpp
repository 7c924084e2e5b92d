// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#include "covspec/errors.hpp"
#include "covspec/io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <cstring>
#include <limits>
#include <random>
#include <sstream>

namespace covspec {
namespace {

Matrix parse(const std::string& text) {
    std::istringstream in(text);
    return io::parse_csv(in);
}

std::string message_of(const std::string& text) {
    try {
        parse(text);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return {};
}

TEST(Csv, HeaderDetection) {
    const Matrix with = parse("x1,x2\n1,2\n3,4\n");
    const Matrix without = parse("1,2\n3,4\n");
    EXPECT_EQ(with, without);
    EXPECT_EQ(with.rows(), 2);
    EXPECT_EQ(with(1, 0), 3.0);
}

TEST(Csv, BlankLinesAndWhitespace) {
    const Matrix m = parse("\n 1 , 2.5\r\n\n-3e2,4\n");
    ASSERT_EQ(m.rows(), 2);
    EXPECT_EQ(m(0, 1), 2.5);
    EXPECT_EQ(m(1, 0), -300.0);
}

TEST(Csv, Errors) {
    EXPECT_NE(message_of("1,2\n3\n").find("line 2"), std::string::npos);
    EXPECT_NE(message_of("1,2\n3,abc\n").find("line 2"), std::string::npos);
    EXPECT_FALSE(message_of("a,b\n").empty());
    EXPECT_FALSE(message_of("").empty());
    EXPECT_FALSE(message_of("1;2\n3,4\n").empty());
}

TEST(Csv, RoundTripIsBitIdentical) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> expo(-300.0, 300.0);
    Matrix m(40, 7);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = std::normal_distribution<double>()(gen) * std::pow(10.0, expo(gen));
    m(0, 0) = std::numeric_limits<double>::denorm_min();
    m(0, 1) = -std::numeric_limits<double>::max();
    m(0, 2) = 0.1;
    m(0, 3) = -0.0;
    std::ostringstream out;
    io::write_csv(out, m);
    const Matrix back = parse(out.str());
    ASSERT_EQ(back.rows(), m.rows());
    EXPECT_EQ(std::memcmp(back.data(), m.data(), sizeof(double) * static_cast<std::size_t>(m.size())), 0);
}

TEST(ReportJson, SchemaAndParameters) {
    const DataMatrix data(testing::gaussian_matrix(120, 20, 2));
    std::vector<TestReport> reports{cwst(data, HypothesisSpec::identity(), 0.05),
                                    wst_classical(data, HypothesisSpec::sphericity(), 0.01)};
    const auto doc = nlohmann::json::parse(io::reports_to_json(reports));
    EXPECT_EQ(doc["schema"], "covspec/1");
    ASSERT_EQ(doc["reports"].size(), 2u);
    const auto& c = doc["reports"][0];
    EXPECT_EQ(c["test"], "CWST");
    EXPECT_EQ(c["reference"]["distribution"], "normal");
    EXPECT_EQ(c["side"], "upper");
    EXPECT_EQ(c["params"]["kappa"], 2);
    EXPECT_EQ(c["params"]["beta"], 0.0);
    EXPECT_EQ(c["params"]["beta_source"], "fixed");
    EXPECT_DOUBLE_EQ(c["params"]["q_n"].get<double>(), 20.0 / 119.0);
    EXPECT_EQ(c["statistic"].get<double>(), reports[0].statistic);
    EXPECT_EQ(c["p_value"].get<double>(), reports[0].p_value);
    EXPECT_EQ(c["wst_rescaled"].get<double>(), *reports[0].wst_rescaled);
    const auto& w = doc["reports"][1];
    EXPECT_EQ(w["reference"]["df"], 209);
    EXPECT_EQ(w["null"], "sphericity");
    EXPECT_FALSE(w.contains("params"));
    EXPECT_EQ(w["alpha"], 0.01);
}

TEST(ReportJson, SummaryLineNamesTheTest) {
    const DataMatrix data(testing::gaussian_matrix(60, 5, 3));
    const std::string line = io::summary_line(nagao_test(data, 0.05));
    EXPECT_EQ(line.rfind("NHT", 0), 0u);
    EXPECT_EQ(line.find('\n'), std::string::npos);
}

TEST(Scenario, ParseFile) {
    std::istringstream in(
        "# comment\n"
        "n = 500\n"
        "p = 160   # dimension\n"
        "population = gamma\n"
        "rho = 0.12\n"
        "tests = cwst, nht\n"
        "reps = 250\n"
        "seed = 17\n"
        "side = two-sided\n"
        "beta = 0.75\n");
    std::vector<std::string> keys;
    const auto s = io::load_scenario(in, {}, &keys);
    EXPECT_EQ(s.n, 500);
    EXPECT_EQ(s.p, 160);
    EXPECT_EQ(s.population, sim::Population::Gamma);
    EXPECT_EQ(s.truth, sim::Truth::Tridiagonal);
    EXPECT_DOUBLE_EQ(s.rho, 0.12);
    EXPECT_EQ(s.tests, (std::vector<TestKind>{TestKind::Cwst, TestKind::Nht}));
    EXPECT_EQ(s.reps, 250u);
    EXPECT_EQ(s.seed, 17u);
    EXPECT_EQ(s.side, Tail::TwoSided);
    EXPECT_DOUBLE_EQ(*s.beta, 0.75);
    EXPECT_EQ(keys.size(), 9u);
}

TEST(Scenario, ParseErrorsNameTheLine) {
    auto err = [](const std::string& text) {
        std::istringstream in(text);
        try {
            io::load_scenario(in);
        } catch (const ValidationError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(err("n = 300\nbogus = 1\n").find("line 2"), std::string::npos);
    EXPECT_NE(err("n = 3x\n").find("line 1"), std::string::npos);
    EXPECT_NE(err("just text\n").find("line 1"), std::string::npos);
    EXPECT_FALSE(err("tests = cwst, cmt\n").empty());
    EXPECT_FALSE(err("population = cauchy\n").empty());
}

TEST(SummaryCsv, Rows) {
    sim::SimSummary summary;
    summary.scenario.n = 300;
    summary.scenario.p = 80;
    sim::TestTally t;
    t.test = TestKind::Cwst;
    t.reps = 2000;
    t.rejections = 130;
    summary.tallies.push_back(t);
    EXPECT_EQ(io::summary_csv_header(), "test,n,p,population,truth,rho,reps,rejections,rate,stderr,failures\n");
    EXPECT_EQ(io::summary_csv_rows(summary), "CWST,300,80,normal,null,0,2000,130,0.0650,0.0055,0\n");
}

}  // namespace
}  // namespace covspec
