#pragma once

#include <stdexcept>
#include <string>

namespace pidkit {

/// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad rows, broken invariants, unknown columns.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Arguments outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input is well formed but does not carry enough data for the request.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// A level that lies outside a reference series.
class OutOfRangeError : public InsufficientDataError {
public:
    OutOfRangeError(const std::string& what, int nearest_year, double nearest_level)
        : InsufficientDataError(what), nearest_year_(nearest_year), nearest_level_(nearest_level) {}

    int nearest_year() const noexcept { return nearest_year_; }
    double nearest_level() const noexcept { return nearest_level_; }

private:
    int nearest_year_;
    double nearest_level_;
};

}  // namespace pidkit
