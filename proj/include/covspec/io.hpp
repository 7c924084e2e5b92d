// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "covspec/hypothesis.hpp"
#include "covspec/simulate.hpp"
#include "covspec/spectral.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace covspec::io {

/// Comma-separated numeric matrix, one row per line. A single leading header
/// row is skipped when any of its fields is not a number. Blank lines are
/// ignored; ragged rows are a ValidationError naming the line.
Matrix parse_csv(std::istream& in);
Matrix read_csv(const std::string& path);

/// Shortest round-trip decimal form of every value, so parse(write(m)) == m
/// bit for bit.
void write_csv(std::ostream& out, const Matrix& m);
void write_csv(const std::string& path, const Matrix& m);

inline constexpr std::string_view kReportSchema = "covspec/1";

/// {"schema": "covspec/1", "reports": [...]} with every parameter needed to
/// recompute each number.
std::string reports_to_json(std::span<const TestReport> reports, int indent = 2);

/// One-line human summary of a report.
std::string summary_line(const TestReport& report);

std::string summary_csv_header();
/// One CSV row per test in the summary, each terminated by '\n'.
std::string summary_csv_rows(const sim::SimSummary& summary);

/// Applies one `key = value` setting. Keys: n, p, population, mu0,
/// gamma_shape, gamma_scale, rho, tests, alpha, reps, seed, side, beta,
/// estimate_beta, workers. rho > 0 selects the tridiagonal alternative.
void apply_scenario_setting(sim::SimScenario& scenario, std::string_view key, std::string_view value);

/// Reads `key = value` lines ('#' starts a comment) on top of `base`. When
/// `keys_seen` is given, the normalized keys applied are appended to it.
sim::SimScenario load_scenario(std::istream& in, sim::SimScenario base = {},
                               std::vector<std::string>* keys_seen = nullptr);
sim::SimScenario load_scenario_file(const std::string& path, sim::SimScenario base = {},
                                    std::vector<std::string>* keys_seen = nullptr);

}  // namespace covspec::io
