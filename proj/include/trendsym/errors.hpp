#pragma once

#include <stdexcept>
#include <string>

namespace trendsym {

// Base class for all recoverable analysis errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Fewer than two usable rows/values where a series is required.
class EmptySeriesError : public Error {
public:
    using Error::Error;
};

// Input CSV lacks the date column or the requested price column.
class MalformedHeaderError : public Error {
public:
    using Error::Error;
};

// Not enough observations for the requested computation.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

// Every sample value is exactly zero, so the statistic is undefined.
class AllZerosError : public Error {
public:
    using Error::Error;
};

// Requested significance level falls outside the tabulated range.
class OutOfTableRangeError : public Error {
public:
    using Error::Error;
};

// Input too large for an O(n^2) helper.
class TooLargeError : public Error {
public:
    using Error::Error;
};

// Price series shorter than the rolling window requires.
class SeriesTooShortError : public Error {
public:
    using Error::Error;
};

}  // namespace trendsym
