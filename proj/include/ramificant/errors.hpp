#pragma once

/// Exception types shared by every ramificant module.

#include <complex>
#include <stdexcept>
#include <string>

namespace ramificant {

/// Bad arguments: mismatched variable counts, out-of-range indices, malformed JSON.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Base for failures of a numeric procedure to reach its requested accuracy.
class NumericFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature ran out of subdivisions. Carries the best estimate.
class ToleranceNotMet : public NumericFailure {
public:
    ToleranceNotMet(const std::string& what, std::complex<double> best, double achieved)
        : NumericFailure(what), best_estimate(best), achieved_error(achieved) {}

    std::complex<double> best_estimate;
    double achieved_error;
};

/// No truncation radius inside the admissible window bounds the ray tail.
class TailBoundFailure : public NumericFailure {
public:
    TailBoundFailure(const std::string& what, double radius_limit)
        : NumericFailure(what), radius_limit(radius_limit) {}

    double radius_limit;
};

/// exp of a value whose real part leaves the double range.
class RangeError : public NumericFailure {
public:
    RangeError(const std::string& what, std::complex<double> exponent)
        : NumericFailure(what), exponent(exponent) {}

    std::complex<double> exponent;
};

/// Pivot below threshold while solving with a period matrix.
class SingularMatrix : public NumericFailure {
public:
    using NumericFailure::NumericFailure;
};

/// The exact and numeric integrability verdicts disagree.
class DisagreementError : public NumericFailure {
public:
    DisagreementError(const std::string& what, std::string exact_payload, std::string numeric_payload)
        : NumericFailure(what), exact_payload(std::move(exact_payload)),
          numeric_payload(std::move(numeric_payload)) {}

    std::string exact_payload;
    std::string numeric_payload;
};

/// A symbolic gradient that is not closed. Always an internal bug.
class ExactnessViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace ramificant
