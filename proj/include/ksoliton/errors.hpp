#pragma once

#include <stdexcept>
#include <string>

namespace ksol {

/// Argument lies outside the domain of a function (s outside [0, R_M), tau >= 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Configuration or parameter set violates a documented invariant.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A target value lies beyond a finite supremum; carries that supremum.
class RangeError : public std::range_error {
public:
    RangeError(const std::string& what, double limit) : std::range_error(what), limit_(limit) {}
    double limit() const noexcept { return limit_; }

private:
    double limit_;
};

/// Adaptive quadrature exhausted its subdivision budget.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
        : std::runtime_error(what), best_(best_estimate), error_(error_estimate) {}
    double best_estimate() const noexcept { return best_; }
    double error_estimate() const noexcept { return error_; }

private:
    double best_;
    double error_;
};

/// Root finder was handed an interval whose endpoint values do not bracket zero.
class BracketError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Initial-value solver could not continue (step size underflow, non-finite derivative).
class IvpError : public std::runtime_error {
public:
    IvpError(const std::string& what, double last_valid_s)
        : std::runtime_error(what), last_s_(last_valid_s) {}
    double last_valid_s() const noexcept { return last_s_; }

private:
    double last_s_;
};

}  // namespace ksol
