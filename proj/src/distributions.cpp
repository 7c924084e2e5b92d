// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#include "covspec/distributions.hpp"

#include "covspec/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace covspec {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

std::string to_string(const Reference& ref) {
    return std::visit(overloaded{[](const StdNormal&) { return std::string("N(0,1)"); },
                                 [](const ChiSquared& c) { return "chi2(" + std::to_string(c.df) + ")"; }},
                      ref);
}

std::string to_string(Tail tail) { return tail == Tail::Upper ? "upper" : "two-sided"; }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double pvalue(double statistic, const Reference& ref, Tail tail) {
    if (std::isnan(statistic)) throw NumericalError("p-value requested for a NaN statistic");
    return std::visit(
        overloaded{[&](const StdNormal&) {
                       if (tail == Tail::Upper) return clamp01(0.5 * std::erfc(statistic / std::numbers::sqrt2));
                       return clamp01(std::erfc(std::abs(statistic) / std::numbers::sqrt2));
                   },
                   [&](const ChiSquared& c) {
                       if (c.df < 1) throw ValidationError("chi-squared df must be >= 1");
                       if (statistic <= 0.0) return 1.0;
                       if (std::isinf(statistic)) return 0.0;
                       return clamp01(boost::math::gamma_q(0.5 * static_cast<double>(c.df), 0.5 * statistic));
                   }},
        ref);
}

}  // namespace covspec
