#pragma once

#include <stdexcept>

namespace phonent {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter, dimension or index outside its documented domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// h = aL/c_s^2 too large for the first-order expansion to mean anything.
class PerturbationBreakdown : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// The mode truncation is too small for the requested accuracy.
class TruncationError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Eigen-solver failure or a discriminant that is negative beyond round-off.
class NumericalDegeneracy : public Error {
public:
    using Error::Error;
};

/// Two independent evaluation routes disagree, or a constructed object
/// violates its invariant.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace phonent
