#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hsconv {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain an operation accepts.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A hypothesis an operation depends on does not hold for the given inputs.
class HypothesisError : public Error {
public:
    using Error::Error;
};

/// A series failed to converge within its term cap.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double partial_sum, std::size_t terms)
        : Error(what), partial_sum_(partial_sum), terms_(terms) {}

    double partial_sum() const noexcept { return partial_sum_; }
    std::size_t terms() const noexcept { return terms_; }

private:
    double partial_sum_;
    std::size_t terms_;
};

/// An integrand or function produced a non-finite value at `point`.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, double point) : Error(what), point_(point) {}

    double point() const noexcept { return point_; }

private:
    double point_;
};

}  // namespace hsconv
