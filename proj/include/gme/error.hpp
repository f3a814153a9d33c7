#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gme {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Tensor/vector dimensions do not line up.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A precondition on an argument value was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Non-finite amplitudes or an operation that has no finite answer.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Unknown catalog name, missing file, or an entry without amplitudes.
class NotFound : public Error {
public:
    using Error::Error;
};

enum class ParseErrorKind {
    Syntax,
    MixedArity,
    IndexOutOfRange,
    DimsMismatch,
    ZeroState,
    InvalidValue,
    NormViolation,
};

const char* to_string(ParseErrorKind kind);

class ParseError : public Error {
public:
    ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& message);

    ParseErrorKind kind() const noexcept { return kind_; }
    /// 1-based; 0 when the error is not tied to a source position.
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    ParseErrorKind kind_;
    std::size_t line_;
    std::size_t column_;
};

} // namespace gme
