#pragma once

#include <stdexcept>
#include <string>

namespace fbgshape {

/// Configuration or data-file syntax problem (CLI exit code 2).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A validated type's invariant or an operation precondition was violated
/// (CLI exit code 4). The message names the field and the violated bound.
class InvariantError : public std::runtime_error {
public:
    explicit InvariantError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: non-finite values, divergence, degenerate systems
/// (CLI exit code 3).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Geometric failure in the reconstruction chain, e.g. a folded-over
/// centerline or a degenerate offset curve (CLI exit code 3).
class GeometryError : public NumericError {
public:
    explicit GeometryError(const std::string& msg) : NumericError(msg) {}
};

/// Fiber strain limit exceeded; the message names the offending node.
class StrainLimitError : public NumericError {
public:
    explicit StrainLimitError(const std::string& msg) : NumericError(msg) {}
};

} // namespace fbgshape
