#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oddjac {

/// Raised when an input violates a documented precondition (parity, chart, degree).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Two polynomials or fields were combined across unrelated charts.
class ChartMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Syntax error in an expression or structure file. Line and column are 1-based.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : ValidationError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace oddjac
