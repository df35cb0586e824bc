// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace lvq {

// Input bytes do not match the declared container/syntax.
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Syntactically valid input using a capability this toolkit does not provide.
struct UnsupportedError : std::runtime_error {
    explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};

// Well-formed input that violates a documented precondition or invariant.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Not enough usable data to compute the requested quantity.
struct InsufficientDataError : std::runtime_error {
    explicit InsufficientDataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad key, value, or combination in a configuration source.
struct ConfigurationError : std::runtime_error {
    explicit ConfigurationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A correlation requested on a constant (zero-variance) vector.
struct UndefinedCorrelation : std::runtime_error {
    explicit UndefinedCorrelation(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace lvq
