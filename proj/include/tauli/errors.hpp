// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace tauli {

/// Input violates a mathematical precondition (argument outside domain,
/// tau outside its valid interval, etc.).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Evaluation point is too close to a zero or pole for the requested
/// precision.  Carries the estimated distance to the singularity.
struct IllConditionedError : std::runtime_error {
    double distance;
    IllConditionedError(const std::string& what, double dist)
        : std::runtime_error(what), distance(dist) {}
};

/// Text input could not be parsed.  `line` is 1-based, 0 if unknown.
struct ParseError : std::runtime_error {
    long line;
    ParseError(const std::string& what, long line_no = 0)
        : std::runtime_error(what), line(line_no) {}
};

/// A certified error rule is not applicable to the requested (tau, n).
struct RuleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested accuracy could not be reached (quadrature non-convergence,
/// escalation cap hit).
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace tauli
