#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace moezipf {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Requested tolerance could not be certified within the evaluation budget.
class AccuracyError : public Error {
public:
    using Error::Error;
};

// Intermediate value over/underflowed or went non-finite.
class NumericalError : public Error {
public:
    using Error::Error;
};

// Input data cannot identify the parameters (e.g. all observations equal one).
class DegenerateDataError : public Error {
public:
    using Error::Error;
};

// A grouped cell has (numerically) zero expected mass.
class DegenerateCellsError : public Error {
public:
    using Error::Error;
};

// Bracketed root finding found no sign change; message carries diagnostics.
class NoRootError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_ = 0;
};

class EmptyDataError : public Error {
public:
    using Error::Error;
};

// A zero value/count/degree was seen while zero_policy = error.
class ZeroValueError : public Error {
public:
    using Error::Error;
};

}  // namespace moezipf
