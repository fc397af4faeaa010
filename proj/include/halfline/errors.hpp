#pragma once

#include <stdexcept>
#include <string>

namespace halfline {

/// Input rejected by a precondition or a type invariant.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// No admissible parameters exist for the requested configuration
/// (e.g. the contraction condition fails, so no reweighting exponent works).
class UnsolvableConfiguration : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An oracle quadrature did not reach its requested accuracy.
class OracleFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace halfline
