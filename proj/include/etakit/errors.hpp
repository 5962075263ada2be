#pragma once

#include <stdexcept>
#include <string>

namespace etakit {

/// Malformed input: dimension mismatch, non-finite entries, unparsable files.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A named mathematical hypothesis of an operation does not hold for the
/// supplied operands (e.g. "K commutes with eta").
class PreconditionError : public InputError {
public:
    PreconditionError(std::string check, const std::string& detail)
        : InputError(check + ": " + detail), check_(std::move(check)) {}

    const std::string& check() const noexcept { return check_; }

private:
    std::string check_;
};

class MetricNotPositiveError : public PreconditionError {
public:
    explicit MetricNotPositiveError(double min_eigenvalue);

    double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

}  // namespace etakit
