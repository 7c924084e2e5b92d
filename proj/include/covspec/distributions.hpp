// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace covspec {

struct StdNormal {};

struct ChiSquared {
    std::int64_t df = 1;
};

using Reference = std::variant<StdNormal, ChiSquared>;

enum class Tail { Upper, TwoSided };

std::string to_string(const Reference& ref);
std::string to_string(Tail tail);

/// Tail probability of `statistic` under `ref`, clamped to [0, 1].
/// Chi-squared is always upper-tailed; `tail` applies to the normal only.
double pvalue(double statistic, const Reference& ref, Tail tail = Tail::Upper);

/// Standard normal CDF.
double normal_cdf(double z);

}  // namespace covspec
