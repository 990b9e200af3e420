#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hardchoice {

enum class ErrorKind {
    DimensionMismatch,
    DuplicateName,
    NonFiniteScore,
    InvalidWeights,
    InvalidTolerance,
    InvalidProblem,
    NonPositiveScoreForLogForm,
    UnsupportedDimension,
    UnsupportedForm,
    UnknownOption,
    UnknownContextTag,
    DegenerateCorpus,
    NotHard,
    NoSupportingJuror,
    InfeasibleTransformation,
    InfeasibleMix,
    SyntaxError,
    SemanticError,
    Io,
};

std::string_view to_string(ErrorKind kind);

// Every domain failure in the library is reported through this type; the CLI
// maps it to exit code 1.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Scenario-text syntax failure. Line and column are 1-based.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, std::size_t column, const std::string& message)
        : Error(ErrorKind::SyntaxError,
                std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace hardchoice
