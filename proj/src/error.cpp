#include "ftdiag/error.hpp"

#include <utility>

namespace ftdiag {

namespace {
std::string with_location(std::size_t line, const std::string& token, const std::string& message) {
    std::string out;
    if (line > 0) {
        out += "line " + std::to_string(line) + ": ";
    }
    out += message;
    if (!token.empty()) {
        out += " (at '" + token + "')";
    }
    return out;
}
}  // namespace

ParseError::ParseError(std::size_t line, std::string token, const std::string& message)
    : Error(with_location(line, token, message)), line_(line), token_(std::move(token)) {}

SolveError::SolveError(const std::string& message, double rcond, double frequency)
    : Error(message), rcond_(rcond), frequency_(frequency) {}

}  // namespace ftdiag
