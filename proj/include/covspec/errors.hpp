// Copyright 2026 The covspec Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace covspec {

/// Bad input: wrong shape, non-finite values, out-of-regime parameters.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// The input was well formed but the numerics broke down
/// (singular matrix, failed factorization, nonpositive variance).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace covspec
