#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ftdiag {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Netlist syntax or semantic error. Carries the 1-based source line (0 when
/// the problem is global, e.g. a missing directive) and the offending token.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::string token, const std::string& message);

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] const std::string& token() const noexcept { return token_; }

private:
    std::size_t line_;
    std::string token_;
};

/// A value or configuration violates a documented invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// The MNA system could not be solved (singular or non-finite result).
class SolveError : public Error {
public:
    SolveError(const std::string& message, double rcond, double frequency);

    [[nodiscard]] double rcond() const noexcept { return rcond_; }
    [[nodiscard]] double frequency() const noexcept { return frequency_; }

private:
    double rcond_;
    double frequency_;
};

}  // namespace ftdiag
