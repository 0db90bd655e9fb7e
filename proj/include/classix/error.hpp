#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace classix {

// Base for every error raised by the library. The CLI maps subclasses to
// exit codes: InvalidInput/ParseError/IoError -> 2, InvariantViolation -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Tanimoto distance between two all-zero vectors.
class UndefinedDistance : public Error {
public:
    using Error::Error;
};

class InvariantViolation : public Error {
public:
    using Error::Error;
};

}  // namespace classix
