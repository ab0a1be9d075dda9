#pragma once

#include <stdexcept>
#include <string>

namespace fatune {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Vector or matrix dimensions do not match what an operation requires.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Requested Sobol dimension exceeds the direction-number table.
class UnsupportedDimension : public Error {
public:
    using Error::Error;
};

class UnknownProblem : public Error {
public:
    using Error::Error;
};

// F-test on a sample with zero variance.
class DegenerateVariance : public Error {
public:
    using Error::Error;
};

} // namespace fatune
