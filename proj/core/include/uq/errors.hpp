#ifndef UQ_ERRORS_HPP
#define UQ_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uq {

// Base class for all library failures.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed arguments: wrong sizes, non-finite values, out-of-range settings.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

// Query outside (or on the non-vertex boundary of) the convex hull of the nodes.
class HullViolationError : public Error {
public:
    using Error::Error;
};

// Iteration budget exhausted; carries the final dual residual norm.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual)
        : Error(what), final_residual(residual) {}
    double final_residual;
};

// Numerically rank-deficient or near-singular matrix; carries the offending pivot.
class ConditioningError : public Error {
public:
    ConditioningError(const std::string& what, double pivot)
        : Error(what), smallest_pivot(pivot) {}
    double smallest_pivot;
};

// A user-supplied function produced a non-finite value at a sample.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, std::size_t index)
        : Error(what), sample_index(index) {}
    std::size_t sample_index;
};

// Non-finite state detected while integrating; carries the time stamp.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, double when)
        : Error(what), time(when) {}
    double time;
};

} // namespace uq

#endif
